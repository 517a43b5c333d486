#include "capkit/report.hpp"

#include <sstream>

namespace capkit {

using json = nlohmann::json;

namespace {

json evidence_list(const std::vector<Evidence>& ev)
{
    json out = json::array();
    for (const auto& e : ev) {
        out.push_back(to_json(e));
    }
    return out;
}

json profile_json(const AccessProfile& p)
{
    json dims = json::array();
    for (const auto& d : p.dims) {
        dims.push_back({{"dimension", d.name},
                        {"max", d.max ? json(d.max->to_string()) : json("no-functioning")},
                        {"threshold", d.threshold.to_string()},
                        {"meets_threshold", d.meets_threshold}});
    }
    return {{"dimensions", dims}, {"no_functioning", p.no_functioning}, {"jointly_satisfied", p.jointly_satisfied}};
}

json finding_json(const Finding& f)
{
    return {{"kind", std::string(to_string(f.kind))},
            {"severity", std::string(to_string(f.severity))},
            {"evidence", evidence_list(f.evidence)}};
}

json domination_json(const DominationResult& d)
{
    json out = {{"status", std::string(to_string(d.status))}, {"steps", evidence_list(d.steps)}};
    if (d.finding) {
        out["finding"] = finding_json(*d.finding);
    }
    return out;
}

// -- human rendering -----------------------------------------------------------------

struct Style {
    bool color;

    std::string wrap(const std::string& s, const char* code) const
    {
        return color ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
    }
    std::string bold(const std::string& s) const { return wrap(s, "1"); }
    std::string status(const std::string& s) const
    {
        if (s == "violated" || s == "unjustified" || s == "finding" || s == "serious") {
            return wrap(s, "31");
        }
        if (s == "pass" || s == "justified") {
            return wrap(s, "32");
        }
        return s;
    }
};

std::string yes_no(const json& b) { return b.get<bool>() ? "yes" : "no"; }

void row(std::ostringstream& os, const std::string& label, const std::string& value)
{
    std::string padded = "  " + label + " ";
    while (padded.size() < 26) {
        padded += '.';
    }
    os << padded << ' ' << value << '\n';
}

void evidence_lines(std::ostringstream& os, const std::string& tag, const json& ev)
{
    for (const auto& e : ev) {
        os << "    [" << tag << "] " << e.at("kind").get<std::string>() << " " << e.at("subject").get<std::string>();
        const auto detail = e.at("detail").get<std::string>();
        if (!detail.empty()) {
            os << ": " << detail;
        }
        os << '\n';
    }
}

void render_verdict(std::ostringstream& os, const json& v, const Style& st)
{
    os << st.bold("== interaction " + v.at("interaction").get<std::string>()) << " (actor "
       << v.at("actor").get<std::string>() << " -> target " << v.at("target").get<std::string>() << ")\n";
    const auto& c1 = v.at("condition1");
    const auto& c2 = v.at("condition2");
    const auto& ben = v.at("beneficence");
    const auto& as = v.at("assistance");
    const auto& pat = v.at("paternalism");
    row(os, "condition 1", st.status(c1.at("status").get<std::string>()));
    row(os, "condition 2", st.status(c2.at("status").get<std::string>()));
    row(os, "beneficence", "weak=" + yes_no(ben.at("weak")) + " real_freedom=" + yes_no(ben.at("real_freedom")) +
                               " life_plan=" + yes_no(ben.at("life_plan")) + " (" +
                               ben.at("label").get<std::string>() + ")");
    row(os, "assistance", "real_freedom=" + yes_no(as.at("real_freedom")) + " life_plans=" + yes_no(as.at("life_plans")));
    std::string pstatus = st.status(pat.at("status").get<std::string>());
    if (!pat.at("failed").empty()) {
        std::string failed;
        for (const auto& c : pat.at("failed")) {
            failed += (failed.empty() ? "" : ",") + c.get<std::string>();
        }
        pstatus += " (failed clauses: " + failed + ")";
    }
    row(os, "paternalism", pstatus);
    std::string modes;
    for (const auto& f : v.at("failure_modes")) {
        modes += (modes.empty() ? "" : ", ") + f.at("kind").get<std::string>() + " [" +
                 st.status(f.at("severity").get<std::string>()) + "]";
    }
    row(os, "failure modes", modes.empty() ? "none" : modes);
    row(os, "domination", st.status(v.at("domination").at("status").get<std::string>()));

    os << "  access profile (E):\n";
    for (const char* side : {"before", "after"}) {
        const auto& prof = c1.at(std::string("access_") + side);
        os << "    " << side << (side[0] == 'a' ? ": " : ":");
        for (const auto& d : prof.at("dimensions")) {
            os << "  " << d.at("dimension").get<std::string>() << "=" << d.at("max").get<std::string>() << "/"
               << d.at("threshold").get<std::string>() << (d.at("meets_threshold").get<bool>() ? "" : "!");
        }
        os << "  jointly_satisfied=" << yes_no(prof.at("jointly_satisfied")) << '\n';
    }

    const bool any_evidence = !c1.at("evidence").empty() || !c2.at("evidence").empty() ||
                              !pat.at("evidence").empty() || !v.at("failure_modes").empty() ||
                              !v.at("maximal_outside_real_freedom").empty() ||
                              !v.at("domination").at("steps").empty();
    if (any_evidence) {
        os << "  evidence:\n";
        evidence_lines(os, "condition1", c1.at("evidence"));
        evidence_lines(os, "condition2", c2.at("evidence"));
        evidence_lines(os, "paternalism", pat.at("evidence"));
        for (const auto& f : v.at("failure_modes")) {
            evidence_lines(os, f.at("kind").get<std::string>(), f.at("evidence"));
        }
        evidence_lines(os, "domination", v.at("domination").at("steps"));
        evidence_lines(os, "M\\Q*", v.at("maximal_outside_real_freedom"));
    }
}

} // namespace

json to_json(const Evidence& e) { return {{"kind", e.kind}, {"subject", e.subject}, {"detail", e.detail}}; }

json to_json(const Verdict& v)
{
    json failed = json::array();
    for (char c : v.paternalism.failed) {
        failed.push_back(std::string(1, c));
    }
    json modes = json::array();
    for (const auto& f : v.failure_modes) {
        modes.push_back(finding_json(f));
    }
    return {
        {"interaction", v.interaction_id},
        {"actor", v.actor_id},
        {"target", v.target},
        {"condition1",
         {{"status", std::string(to_string(v.condition1.status))},
          {"evidence", evidence_list(v.condition1.evidence)},
          {"access_before", profile_json(v.condition1.before)},
          {"access_after", profile_json(v.condition1.after)}}},
        {"condition2",
         {{"status", std::string(to_string(v.condition2.status))}, {"evidence", evidence_list(v.condition2.evidence)}}},
        {"beneficence",
         {{"weak", v.beneficence.weak},
          {"real_freedom", v.beneficence.real_freedom},
          {"life_plan", v.beneficence.life_plan},
          {"label", std::string(v.beneficence.label())}}},
        {"assistance", {{"real_freedom", v.assistance_real_freedom}, {"life_plans", v.assistance_life_plans}}},
        {"paternalism",
         {{"status", std::string(to_string(v.paternalism.status))},
          {"clauses",
           {{"a", v.paternalism.clauses.a},
            {"b", v.paternalism.clauses.b},
            {"c", v.paternalism.clauses.c},
            {"d", v.paternalism.clauses.d}}},
          {"failed", failed},
          {"evidence", evidence_list(v.paternalism.evidence)}}},
        {"failure_modes", modes},
        {"domination", domination_json(v.domination)},
        {"maximal_outside_real_freedom", evidence_list(v.maximal_outside_real_freedom)},
    };
}

json to_json(const Report& r)
{
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
        verdicts.push_back(to_json(v));
    }
    json out = {{"format_version", 1},
                {"provenance",
                 {{"source", r.provenance.source},
                  {"digest", r.provenance.digest},
                  {"engine_version", r.provenance.engine_version}}},
                {"verdicts", verdicts}};
    if (r.trace) {
        json steps = json::array();
        for (const auto& v : r.trace->steps) {
            steps.push_back(to_json(v));
        }
        out["trace"] = {{"id", r.trace->trace_id}, {"domination", domination_json(r.trace->domination)}, {"steps", steps}};
    }
    return out;
}

std::string render_human(const json& structured, bool color)
{
    const Style st{color};
    std::ostringstream os;
    const auto& prov = structured.at("provenance");
    os << st.bold("capkit report") << "  source=" << prov.at("source").get<std::string>()
       << "  digest=" << prov.at("digest").get<std::string>()
       << "  engine=" << prov.at("engine_version").get<std::string>() << '\n';

    if (structured.contains("trace")) {
        const auto& t = structured.at("trace");
        const auto& dom = t.at("domination");
        os << '\n' << st.bold("== trace " + t.at("id").get<std::string>()) << '\n';
        row(os, "domination", st.status(dom.at("status").get<std::string>()));
        if (dom.contains("finding")) {
            evidence_lines(os, "domination", dom.at("finding").at("evidence"));
        } else {
            evidence_lines(os, "step", dom.at("steps"));
        }
        for (const auto& v : t.at("steps")) {
            os << '\n';
            render_verdict(os, v, st);
        }
    }

    const auto& verdicts = structured.at("verdicts");
    if (verdicts.empty() && !structured.contains("trace")) {
        os << "\nNo verdicts.\n";
    }
    for (const auto& v : verdicts) {
        os << '\n';
        render_verdict(os, v, st);
    }
    return os.str();
}

std::string emit_report(const Report& r, ReportFormat format, bool color)
{
    const auto structured = to_json(r);
    if (format == ReportFormat::structured) {
        return structured.dump(2) + "\n";
    }
    return render_human(structured, color);
}

} // namespace capkit
