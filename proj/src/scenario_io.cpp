#include "capkit/scenario_io.hpp"

#include "capkit/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

namespace capkit {

using json = nlohmann::json;

namespace {

// -- reading ------------------------------------------------------------------------

std::string escape_key(std::string_view key)
{
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string& path, std::string_view key) { return path + "/" + escape_key(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

std::string_view type_name(const json& j)
{
    switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "object";
    case json::value_t::array: return "array";
    case json::value_t::string: return "string";
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_float: return "non-integer number";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    default: return "value";
    }
}

class Reader {
public:
    Reader(Diagnostics& diags, bool lenient) : diags_(diags), lenient_(lenient) {}

    bool failed() const { return has_errors(diags_); }

    void error(const std::string& path, std::string msg) { diags_.push_back({Severity::error, path, std::move(msg), {}, {}}); }

    bool object(const json& j, const std::string& path)
    {
        if (!j.is_object()) {
            error(path, "expected object, found " + std::string(type_name(j)));
            return false;
        }
        return true;
    }

    bool array(const json& j, const std::string& path)
    {
        if (!j.is_array()) {
            error(path, "expected array, found " + std::string(type_name(j)));
            return false;
        }
        return true;
    }

    void known_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed)
    {
        for (const auto& [key, value] : obj.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                diags_.push_back({lenient_ ? Severity::warning : Severity::error, child(path, key),
                                  "unknown field '" + key + "'", {}, {}});
            }
        }
    }

    const json* field(const json& obj, const std::string& path, std::string_view key, bool required)
    {
        auto it = obj.find(std::string(key));
        if (it == obj.end()) {
            if (required) {
                error(path, "missing required field '" + std::string(key) + "'");
            }
            return nullptr;
        }
        return &*it;
    }

    std::string string(const json& j, const std::string& path)
    {
        if (!j.is_string()) {
            error(path, "expected string, found " + std::string(type_name(j)));
            return {};
        }
        return j.get<std::string>();
    }

    bool boolean(const json& j, const std::string& path)
    {
        if (!j.is_boolean()) {
            error(path, "expected boolean, found " + std::string(type_name(j)));
            return false;
        }
        return j.get<bool>();
    }

    Rational rational(const json& j, const std::string& path)
    {
        try {
            if (j.is_number_integer() && !j.is_number_unsigned()) {
                return Rational(j.get<std::int64_t>());
            }
            if (j.is_number_unsigned()) {
                const auto u = j.get<std::uint64_t>();
                if (u > static_cast<std::uint64_t>(INT64_MAX)) {
                    error(path, "integer literal out of range");
                    return {};
                }
                return Rational(static_cast<std::int64_t>(u));
            }
            if (j.is_string()) {
                return Rational::parse(j.get<std::string>());
            }
        } catch (const ArithmeticError& e) {
            error(path, e.what());
            return {};
        }
        if (j.is_number_float()) {
            error(path, "non-integer JSON number is not exact; write it as a string such as \"1/3\" or \"0.25\"");
        } else {
            error(path, "expected rational literal, found " + std::string(type_name(j)));
        }
        return {};
    }

    Vector vector(const json& j, const std::string& path)
    {
        Vector out;
        if (!array(j, path)) {
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(rational(j[i], child(path, i)));
        }
        return out;
    }

    std::vector<std::string> strings(const json& j, const std::string& path)
    {
        std::vector<std::string> out;
        if (!array(j, path)) {
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(string(j[i], child(path, i)));
        }
        return out;
    }

    std::map<std::string, Rational> named_rationals(const json& j, const std::string& path)
    {
        std::map<std::string, Rational> out;
        if (!object(j, path)) {
            return out;
        }
        for (const auto& [key, value] : j.items()) {
            out[key] = rational(value, child(path, key));
        }
        return out;
    }

    std::vector<Dimension> dims(const json& j, const std::string& path)
    {
        std::vector<Dimension> out;
        if (!array(j, path)) {
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto p = child(path, i);
            Dimension d;
            if (j[i].is_string()) {
                d.name = j[i].get<std::string>();
            } else if (object(j[i], p)) {
                known_keys(j[i], p, {"name", "description"});
                if (const auto* n = field(j[i], p, "name", true)) {
                    d.name = string(*n, child(p, "name"));
                }
                if (const auto* desc = field(j[i], p, "description", false)) {
                    d.description = string(*desc, child(p, "description"));
                }
            }
            out.push_back(std::move(d));
        }
        return out;
    }

    Guard guard(const json& j, const std::string& path)
    {
        Guard g;
        if (!object(j, path)) {
            return g;
        }
        known_keys(j, path, {"context", "component", "min"});
        if (const auto* c = field(j, path, "context", true)) {
            const auto name = string(*c, child(path, "context"));
            if (name == "characteristics") {
                g.context = ContextKind::characteristics;
            } else if (name == "social") {
                g.context = ContextKind::social;
            } else if (c->is_string()) {
                error(child(path, "context"), "context must be 'characteristics' or 'social', found '" + name + "'");
            }
        }
        if (const auto* c = field(j, path, "component", true)) {
            g.component = string(*c, child(path, "component"));
        }
        if (const auto* m = field(j, path, "min", true)) {
            g.min = rational(*m, child(path, "min"));
        }
        return g;
    }

    UtilizationEntry utilization_entry(const json& j, const std::string& path)
    {
        UtilizationEntry e;
        if (!object(j, path)) {
            return e;
        }
        known_keys(j, path, {"pattern", "resource", "guards", "output"});
        if (const auto* p = field(j, path, "pattern", true)) {
            e.pattern_id = string(*p, child(path, "pattern"));
        }
        if (const auto* r = field(j, path, "resource", true)) {
            e.resource_id = string(*r, child(path, "resource"));
        }
        if (const auto* o = field(j, path, "output", true)) {
            e.output = string(*o, child(path, "output"));
        }
        if (const auto* gs = field(j, path, "guards", false); gs && array(*gs, child(path, "guards"))) {
            for (std::size_t i = 0; i < gs->size(); ++i) {
                e.guards.push_back(guard((*gs)[i], child(child(path, "guards"), i)));
            }
        }
        return e;
    }

    ValuationMap valuation(const json& j, const std::string& path, MapKind kind)
    {
        ValuationMap w{kind, {}};
        if (!object(j, path)) {
            return w;
        }
        known_keys(j, path, {"table", "linear"});
        const auto* table = field(j, path, "table", false);
        const auto* linear = field(j, path, "linear", false);
        if ((table == nullptr) == (linear == nullptr)) {
            error(path, "valuation map needs exactly one of 'table' or 'linear'");
            return w;
        }
        if (table != nullptr) {
            ValuationTable t;
            const auto p = child(path, "table");
            if (object(*table, p)) {
                for (const auto& [id, row] : table->items()) {
                    t.rows[id] = vector(row, child(p, id));
                }
            }
            w.form = std::move(t);
        } else {
            LinearMap m;
            const auto p = child(path, "linear");
            if (array(*linear, p)) {
                for (std::size_t i = 0; i < linear->size(); ++i) {
                    m.matrix.push_back(vector((*linear)[i], child(p, i)));
                }
            }
            w.form = std::move(m);
        }
        return w;
    }

    Scenario scenario(const json& j, const std::string& path)
    {
        Scenario s;
        if (!object(j, path)) {
            return s;
        }
        known_keys(j, path, {"agent", "schemas", "resources", "characteristics", "social", "functionings",
                             "utilization", "maps", "theta", "p_threshold"});
        if (const auto* a = field(j, path, "agent", true)) {
            s.agent_id = string(*a, child(path, "agent"));
        }
        if (const auto* sc = field(j, path, "schemas", true); sc && object(*sc, child(path, "schemas"))) {
            const auto p = child(path, "schemas");
            known_keys(*sc, p, {"B", "E", "P", "U", "resources"});
            if (const auto* d = field(*sc, p, "B", true)) {
                s.schemas.b.dims = dims(*d, child(p, "B"));
            }
            if (const auto* d = field(*sc, p, "E", true)) {
                s.schemas.e.dims = dims(*d, child(p, "E"));
            }
            if (const auto* d = field(*sc, p, "P", true)) {
                s.schemas.p.dims = dims(*d, child(p, "P"));
            }
            if (const auto* d = field(*sc, p, "U", false)) {
                s.schemas.u = DimensionSchema{Space::U, dims(*d, child(p, "U"))};
            }
            if (const auto* d = field(*sc, p, "resources", true)) {
                s.schemas.resources = dims(*d, child(p, "resources"));
            }
        }
        if (const auto* rs = field(j, path, "resources", true); rs && array(*rs, child(path, "resources"))) {
            for (std::size_t i = 0; i < rs->size(); ++i) {
                s.resources.push_back(resource((*rs)[i], child(child(path, "resources"), i)));
            }
        }
        if (const auto* c = field(j, path, "characteristics", true)) {
            s.characteristics.values = named_rationals(*c, child(path, "characteristics"));
        }
        if (const auto* c = field(j, path, "social", true)) {
            s.social.values = named_rationals(*c, child(path, "social"));
        }
        if (const auto* fs = field(j, path, "functionings", true); fs && array(*fs, child(path, "functionings"))) {
            for (std::size_t i = 0; i < fs->size(); ++i) {
                const auto p = child(child(path, "functionings"), i);
                const auto& fj = (*fs)[i];
                FunctioningVector f;
                if (object(fj, p)) {
                    known_keys(fj, p, {"id", "values", "unreachable"});
                    if (const auto* id = field(fj, p, "id", true)) {
                        f.id = string(*id, child(p, "id"));
                    }
                    if (const auto* v = field(fj, p, "values", true)) {
                        f.values = vector(*v, child(p, "values"));
                    }
                    if (const auto* u = field(fj, p, "unreachable", false)) {
                        f.unreachable = boolean(*u, child(p, "unreachable"));
                    }
                }
                s.functionings.push_back(std::move(f));
            }
        }
        if (const auto* us = field(j, path, "utilization", true); us && array(*us, child(path, "utilization"))) {
            for (std::size_t i = 0; i < us->size(); ++i) {
                s.utilization.push_back(utilization_entry((*us)[i], child(child(path, "utilization"), i)));
            }
        }
        if (const auto* maps = field(j, path, "maps", true); maps && object(*maps, child(path, "maps"))) {
            const auto p = child(path, "maps");
            known_keys(*maps, p, {"v", "r", "u"});
            if (const auto* m = field(*maps, p, "v", true)) {
                s.v = valuation(*m, child(p, "v"), MapKind::v);
            }
            if (const auto* m = field(*maps, p, "r", true)) {
                s.r = valuation(*m, child(p, "r"), MapKind::r);
            }
            if (const auto* m = field(*maps, p, "u", false)) {
                s.u = valuation(*m, child(p, "u"), MapKind::u);
            }
        }
        if (const auto* t = field(j, path, "theta", true)) {
            s.theta = vector(*t, child(path, "theta"));
        }
        if (const auto* t = field(j, path, "p_threshold", false)) {
            s.p_threshold = vector(*t, child(path, "p_threshold"));
        }
        return s;
    }

    ResourceVector resource(const json& j, const std::string& path)
    {
        ResourceVector x;
        if (!object(j, path)) {
            return x;
        }
        known_keys(j, path, {"id", "values"});
        if (const auto* id = field(j, path, "id", true)) {
            x.id = string(*id, child(path, "id"));
        }
        if (const auto* v = field(j, path, "values", true)) {
            x.values = vector(*v, child(path, "values"));
        }
        return x;
    }

    ScenarioDelta delta(const json& j, const std::string& path)
    {
        ScenarioDelta d;
        if (!object(j, path)) {
            return d;
        }
        known_keys(j, path, {"resources_added", "resources_removed", "characteristics", "social", "utilization_added",
                             "utilization_removed"});
        if (const auto* a = field(j, path, "resources_added", false); a && array(*a, child(path, "resources_added"))) {
            for (std::size_t i = 0; i < a->size(); ++i) {
                d.resources_added.push_back(resource((*a)[i], child(child(path, "resources_added"), i)));
            }
        }
        if (const auto* r = field(j, path, "resources_removed", false)) {
            d.resources_removed = strings(*r, child(path, "resources_removed"));
        }
        if (const auto* c = field(j, path, "characteristics", false)) {
            d.characteristics_delta = named_rationals(*c, child(path, "characteristics"));
        }
        if (const auto* c = field(j, path, "social", false)) {
            d.social_delta = named_rationals(*c, child(path, "social"));
        }
        if (const auto* a = field(j, path, "utilization_added", false);
            a && array(*a, child(path, "utilization_added"))) {
            for (std::size_t i = 0; i < a->size(); ++i) {
                d.utilization_added.push_back(utilization_entry((*a)[i], child(child(path, "utilization_added"), i)));
            }
        }
        if (const auto* r = field(j, path, "utilization_removed", false);
            r && array(*r, child(path, "utilization_removed"))) {
            for (std::size_t i = 0; i < r->size(); ++i) {
                const auto p = child(child(path, "utilization_removed"), i);
                const auto& kj = (*r)[i];
                UtilizationKey key;
                if (object(kj, p)) {
                    known_keys(kj, p, {"pattern", "resource"});
                    if (const auto* pat = field(kj, p, "pattern", true)) {
                        key.pattern_id = string(*pat, child(p, "pattern"));
                    }
                    if (const auto* res = field(kj, p, "resource", true)) {
                        key.resource_id = string(*res, child(p, "resource"));
                    }
                }
                d.utilization_removed.push_back(std::move(key));
            }
        }
        return d;
    }

    InteractionRecord interaction(const json& j, const std::string& path)
    {
        InteractionRecord rec;
        if (!object(j, path)) {
            return rec;
        }
        known_keys(j, path, {"id", "actor", "target", "deltas", "intent", "mechanisms", "actor_has_right",
                             "communication_feasible", "proportionality_ok", "unfair_terms", "promoted_outcome",
                             "actor_estimate_of_target_values", "believed_scenario", "threat_scenario"});
        if (const auto* v = field(j, path, "id", true)) {
            rec.id = string(*v, child(path, "id"));
        }
        if (const auto* v = field(j, path, "actor", true)) {
            rec.actor_id = string(*v, child(path, "actor"));
        }
        if (const auto* v = field(j, path, "target", true)) {
            rec.target = string(*v, child(path, "target"));
        }
        if (const auto* v = field(j, path, "deltas", false)) {
            rec.deltas = delta(*v, child(path, "deltas"));
        }
        if (const auto* v = field(j, path, "intent", true)) {
            const auto name = string(*v, child(path, "intent"));
            if (auto intent = parse_intent(name)) {
                rec.intent = *intent;
            } else if (v->is_string()) {
                error(child(path, "intent"), "unknown intent '" + name + "'");
            }
        }
        if (const auto* v = field(j, path, "mechanisms", true)) {
            const auto p = child(path, "mechanisms");
            const auto names = strings(*v, p);
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (auto m = parse_mechanism(names[i])) {
                    rec.mechanisms.insert(*m);
                } else if ((*v)[i].is_string()) {
                    error(child(p, i), "unknown mechanism '" + names[i] + "'");
                }
            }
        }
        auto flag = [&](std::string_view key, bool& out) {
            if (const auto* v = field(j, path, key, false)) {
                out = boolean(*v, child(path, key));
            }
        };
        flag("actor_has_right", rec.actor_has_right);
        flag("communication_feasible", rec.communication_feasible);
        flag("proportionality_ok", rec.proportionality_ok);
        flag("unfair_terms", rec.unfair_terms);
        if (const auto* v = field(j, path, "promoted_outcome", false)) {
            rec.promoted_outcome = string(*v, child(path, "promoted_outcome"));
        }
        if (const auto* v = field(j, path, "actor_estimate_of_target_values", false)) {
            rec.actor_estimate_of_target_values = valuation(*v, child(path, "actor_estimate_of_target_values"), MapKind::v);
        }
        if (const auto* v = field(j, path, "believed_scenario", false)) {
            rec.believed_scenario = scenario(*v, child(path, "believed_scenario"));
        }
        if (const auto* v = field(j, path, "threat_scenario", false)) {
            rec.threat_scenario = scenario(*v, child(path, "threat_scenario"));
        }
        return rec;
    }

    TraceRef trace(const json& j, const std::string& path)
    {
        TraceRef t;
        if (!object(j, path)) {
            return t;
        }
        known_keys(j, path, {"id", "steps"});
        if (const auto* v = field(j, path, "id", true)) {
            t.id = string(*v, child(path, "id"));
        }
        if (const auto* steps = field(j, path, "steps", true); steps && array(*steps, child(path, "steps"))) {
            for (std::size_t i = 0; i < steps->size(); ++i) {
                const auto p = child(child(path, "steps"), i);
                const auto& sj = (*steps)[i];
                TraceStepRef step;
                if (object(sj, p)) {
                    known_keys(sj, p, {"interaction", "target_choice", "actor_desired", "before"});
                    if (const auto* v = field(sj, p, "interaction", true)) {
                        step.interaction = string(*v, child(p, "interaction"));
                    }
                    if (const auto* v = field(sj, p, "target_choice", true)) {
                        step.target_choice = string(*v, child(p, "target_choice"));
                    }
                    if (const auto* v = field(sj, p, "actor_desired", true)) {
                        step.actor_desired = string(*v, child(p, "actor_desired"));
                    }
                    if (const auto* v = field(sj, p, "before", false)) {
                        step.before = scenario(*v, child(p, "before"));
                    }
                }
                t.steps.push_back(std::move(step));
            }
        }
        return t;
    }

    ScenarioDocument document(const json& j)
    {
        ScenarioDocument doc;
        const std::string root;
        if (!object(j, root)) {
            return doc;
        }
        known_keys(j, root, {"format_version", "scenario", "interactions", "traces"});
        if (const auto* v = field(j, root, "format_version", true)) {
            if (!v->is_number_integer() || v->get<std::int64_t>() != kFormatVersion) {
                error("/format_version", "unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
            }
        }
        if (const auto* v = field(j, root, "scenario", true)) {
            doc.scenario = scenario(*v, "/scenario");
        }
        if (const auto* v = field(j, root, "interactions", false); v && array(*v, "/interactions")) {
            for (std::size_t i = 0; i < v->size(); ++i) {
                doc.interactions.push_back(interaction((*v)[i], child("/interactions", i)));
            }
        }
        if (const auto* v = field(j, root, "traces", false); v && array(*v, "/traces")) {
            for (std::size_t i = 0; i < v->size(); ++i) {
                doc.traces.push_back(trace((*v)[i], child("/traces", i)));
            }
        }
        return doc;
    }

private:
    Diagnostics& diags_;
    bool lenient_;
};

// -- semantic checks ----------------------------------------------------------------

void append(Diagnostics& out, Diagnostics more) { out.insert(out.end(), more.begin(), more.end()); }

void check_map_against(Diagnostics& diags, const ValuationMap& w, const Scenario& s, std::size_t codomain,
                       const std::string& path)
{
    // Reuse the scenario validator by substituting the map for v.
    (void)codomain;
    Scenario probe = s;
    probe.v = w;
    for (auto d : validate_scenario(probe, "")) {
        if (d.severity == Severity::error && d.path.rfind("/maps/v", 0) == 0) {
            d.path = path + d.path.substr(std::string("/maps/v").size());
            diags.push_back(std::move(d));
        }
    }
}

void check_document(const ScenarioDocument& doc, Diagnostics& diags)
{
    const auto& s = doc.scenario;
    append(diags, validate_scenario(s, "/scenario"));
    if (has_errors(diags)) {
        return;
    }

    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.interactions.size(); ++i) {
        const auto& rec = doc.interactions[i];
        const auto path = child("/interactions", i);
        auto err = [&](const std::string& p, std::string msg) {
            diags.push_back({Severity::error, p, std::move(msg), {}, {}});
        };
        if (rec.id.empty()) {
            err(child(path, "id"), "interaction id is empty");
        }
        if (!ids.insert(rec.id).second) {
            err(child(path, "id"), "duplicate interaction id '" + rec.id + "'");
        }
        if (rec.target != s.agent_id) {
            err(child(path, "target"), "target '" + rec.target + "' is not the scenario's agent '" + s.agent_id + "'");
        }
        try {
            (void)apply_interaction(s, rec);
        } catch (const Error& e) {
            err(child(path, "deltas"), e.what());
        }
        if (rec.promoted_outcome && s.find_functioning(*rec.promoted_outcome) == nullptr) {
            err(child(path, "promoted_outcome"), "unknown functioning '" + *rec.promoted_outcome + "'");
        }
        if (rec.actor_estimate_of_target_values) {
            check_map_against(diags, *rec.actor_estimate_of_target_values, s, s.schemas.p.size(),
                              child(path, "actor_estimate_of_target_values"));
        }
        if (rec.believed_scenario) {
            append(diags, validate_scenario(*rec.believed_scenario, child(path, "believed_scenario")));
        }
        if (rec.threat_scenario) {
            append(diags, validate_scenario(*rec.threat_scenario, child(path, "threat_scenario")));
        }
        if (rec.has_mechanism(Mechanism::threat) && !rec.threat_scenario) {
            err(child(path, "threat_scenario"), "mechanism 'threat' requires a threat_scenario");
        }
        if ((rec.has_mechanism(Mechanism::information_filtering) || rec.has_mechanism(Mechanism::misrepresentation)) &&
            !rec.believed_scenario) {
            err(child(path, "believed_scenario"), "information-shaping mechanisms require a believed_scenario");
        }
    }
    if (has_errors(diags)) {
        return;
    }

    std::set<std::string> trace_ids;
    for (std::size_t i = 0; i < doc.traces.size(); ++i) {
        const auto& t = doc.traces[i];
        const auto path = child("/traces", i);
        auto err = [&](const std::string& p, std::string msg) {
            diags.push_back({Severity::error, p, std::move(msg), {}, {}});
        };
        if (!trace_ids.insert(t.id).second) {
            err(child(path, "id"), "duplicate trace id '" + t.id + "'");
        }
        if (t.steps.empty()) {
            err(child(path, "steps"), "trace has no steps");
            continue;
        }
        bool refs_ok = true;
        for (std::size_t k = 0; k < t.steps.size(); ++k) {
            const auto& step = t.steps[k];
            const auto p = child(child(path, "steps"), k);
            if (doc.find_interaction(step.interaction) == nullptr) {
                err(child(p, "interaction"), "unknown interaction '" + step.interaction + "'");
                refs_ok = false;
            }
            for (const auto& [key, id] : {std::pair{"target_choice", &step.target_choice},
                                          std::pair{"actor_desired", &step.actor_desired}}) {
                if (s.find_functioning(*id) == nullptr) {
                    err(child(p, key), "unknown functioning '" + *id + "'");
                    refs_ok = false;
                }
            }
            if (step.before) {
                auto before_diags = validate_scenario(*step.before, child(p, "before"));
                refs_ok = refs_ok && !has_errors(before_diags);
                append(diags, std::move(before_diags));
            }
        }
        if (!refs_ok) {
            continue;
        }
        try {
            const auto trace = resolve_trace(doc, t.id);
            for (std::size_t k = 0; k < trace.steps.size(); ++k) {
                const auto& step = trace.steps[k];
                const auto p = child(child(path, "steps"), k);
                if (k > 0 && !(trace.steps[k - 1].after == step.before)) {
                    err(child(p, "before"), "before-scenario does not chain from the previous step's after-scenario");
                }
                const auto* choice = step.after.find_functioning(step.target_choice);
                if (choice == nullptr || !compute_freedom(step.after).contains(choice->values)) {
                    err(child(p, "target_choice"), "'" + step.target_choice + "' is not in the step's freedom set");
                }
            }
        } catch (const Error& e) {
            err(path, e.what());
        }
    }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte)
{
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// -- writing ------------------------------------------------------------------------

json rational_json(const Rational& r) { return r.to_string(); }

json vector_json(const Vector& v)
{
    json out = json::array();
    for (const auto& x : v) {
        out.push_back(rational_json(x));
    }
    return out;
}

json dims_json(const std::vector<Dimension>& dims)
{
    json out = json::array();
    for (const auto& d : dims) {
        json dj = {{"name", d.name}};
        if (!d.description.empty()) {
            dj["description"] = d.description;
        }
        out.push_back(std::move(dj));
    }
    return out;
}

json named_json(const std::map<std::string, Rational>& values)
{
    json out = json::object();
    for (const auto& [k, v] : values) {
        out[k] = rational_json(v);
    }
    return out;
}

json entry_json(const UtilizationEntry& e)
{
    json guards = json::array();
    for (const auto& g : e.guards) {
        guards.push_back({{"context", std::string(to_string(g.context))},
                          {"component", g.component},
                          {"min", rational_json(g.min)}});
    }
    return {{"pattern", e.pattern_id}, {"resource", e.resource_id}, {"guards", guards}, {"output", e.output}};
}

json map_json(const ValuationMap& w)
{
    if (const auto* t = std::get_if<ValuationTable>(&w.form)) {
        json rows = json::object();
        for (const auto& [id, row] : t->rows) {
            rows[id] = vector_json(row);
        }
        return {{"table", rows}};
    }
    json rows = json::array();
    for (const auto& row : std::get<LinearMap>(w.form).matrix) {
        rows.push_back(vector_json(row));
    }
    return {{"linear", rows}};
}

json resource_json(const ResourceVector& x) { return {{"id", x.id}, {"values", vector_json(x.values)}}; }

json delta_json(const ScenarioDelta& d)
{
    json out = json::object();
    if (!d.resources_added.empty()) {
        json a = json::array();
        for (const auto& x : d.resources_added) {
            a.push_back(resource_json(x));
        }
        out["resources_added"] = a;
    }
    if (!d.resources_removed.empty()) {
        out["resources_removed"] = d.resources_removed;
    }
    if (!d.characteristics_delta.empty()) {
        out["characteristics"] = named_json(d.characteristics_delta);
    }
    if (!d.social_delta.empty()) {
        out["social"] = named_json(d.social_delta);
    }
    if (!d.utilization_added.empty()) {
        json a = json::array();
        for (const auto& e : d.utilization_added) {
            a.push_back(entry_json(e));
        }
        out["utilization_added"] = a;
    }
    if (!d.utilization_removed.empty()) {
        json a = json::array();
        for (const auto& k : d.utilization_removed) {
            a.push_back({{"pattern", k.pattern_id}, {"resource", k.resource_id}});
        }
        out["utilization_removed"] = a;
    }
    return out;
}

json interaction_json(const InteractionRecord& rec)
{
    json mechanisms = json::array();
    for (auto m : rec.mechanisms) {
        mechanisms.push_back(std::string(to_string(m)));
    }
    json out = {{"id", rec.id},
                {"actor", rec.actor_id},
                {"target", rec.target},
                {"deltas", delta_json(rec.deltas)},
                {"intent", std::string(to_string(rec.intent))},
                {"mechanisms", mechanisms},
                {"actor_has_right", rec.actor_has_right},
                {"communication_feasible", rec.communication_feasible},
                {"proportionality_ok", rec.proportionality_ok},
                {"unfair_terms", rec.unfair_terms}};
    if (rec.promoted_outcome) {
        out["promoted_outcome"] = *rec.promoted_outcome;
    }
    if (rec.actor_estimate_of_target_values) {
        out["actor_estimate_of_target_values"] = map_json(*rec.actor_estimate_of_target_values);
    }
    if (rec.believed_scenario) {
        out["believed_scenario"] = to_json(*rec.believed_scenario);
    }
    if (rec.threat_scenario) {
        out["threat_scenario"] = to_json(*rec.threat_scenario);
    }
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

const InteractionRecord* ScenarioDocument::find_interaction(std::string_view id) const
{
    auto it = std::find_if(interactions.begin(), interactions.end(), [&](const auto& r) { return r.id == id; });
    return it == interactions.end() ? nullptr : &*it;
}

const TraceRef* ScenarioDocument::find_trace(std::string_view id) const
{
    auto it = std::find_if(traces.begin(), traces.end(), [&](const auto& t) { return t.id == id; });
    return it == traces.end() ? nullptr : &*it;
}

ParseResult parse_document(std::string_view text, const ParseOptions& options)
{
    ParseResult result;
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        // Keep only the library's description; the location is reported separately.
        if (auto pos = msg.find(": "); pos != std::string::npos) {
            msg = msg.substr(pos + 2);
        }
        result.diagnostics.push_back({Severity::error, "", msg, line, col});
        return result;
    }

    Reader reader(result.diagnostics, options.lenient);
    auto doc = reader.document(j);
    if (reader.failed()) {
        return result;
    }
    try {
        check_document(doc, result.diagnostics);
    } catch (const Error& e) {
        result.diagnostics.push_back({Severity::error, "", e.what(), {}, {}});
    }
    if (!has_errors(result.diagnostics)) {
        result.document = std::move(doc);
    }
    return result;
}

json to_json(const Scenario& s)
{
    json schemas = {{"B", dims_json(s.schemas.b.dims)},
                    {"E", dims_json(s.schemas.e.dims)},
                    {"P", dims_json(s.schemas.p.dims)},
                    {"resources", dims_json(s.schemas.resources)}};
    if (s.schemas.u) {
        schemas["U"] = dims_json(s.schemas.u->dims);
    }
    json resources = json::array();
    for (const auto& x : s.resources) {
        resources.push_back(resource_json(x));
    }
    json functionings = json::array();
    for (const auto& f : s.functionings) {
        json fj = {{"id", f.id}, {"values", vector_json(f.values)}};
        if (f.unreachable) {
            fj["unreachable"] = true;
        }
        functionings.push_back(std::move(fj));
    }
    json utilization = json::array();
    for (const auto& e : s.utilization) {
        utilization.push_back(entry_json(e));
    }
    json maps = {{"v", map_json(s.v)}, {"r", map_json(s.r)}};
    if (s.u) {
        maps["u"] = map_json(*s.u);
    }
    json out = {{"agent", s.agent_id},
                {"schemas", schemas},
                {"resources", resources},
                {"characteristics", named_json(s.characteristics.values)},
                {"social", named_json(s.social.values)},
                {"functionings", functionings},
                {"utilization", utilization},
                {"maps", maps},
                {"theta", vector_json(s.theta)}};
    if (s.p_threshold) {
        out["p_threshold"] = vector_json(*s.p_threshold);
    }
    return out;
}

json to_json(const ScenarioDocument& doc)
{
    json interactions = json::array();
    for (const auto& rec : doc.interactions) {
        interactions.push_back(interaction_json(rec));
    }
    json traces = json::array();
    for (const auto& t : doc.traces) {
        json steps = json::array();
        for (const auto& step : t.steps) {
            json sj = {{"interaction", step.interaction},
                       {"target_choice", step.target_choice},
                       {"actor_desired", step.actor_desired}};
            if (step.before) {
                sj["before"] = to_json(*step.before);
            }
            steps.push_back(std::move(sj));
        }
        traces.push_back({{"id", t.id}, {"steps", steps}});
    }
    return {{"format_version", doc.format_version},
            {"scenario", to_json(doc.scenario)},
            {"interactions", interactions},
            {"traces", traces}};
}

std::string serialize(const ScenarioDocument& doc) { return dump(to_json(doc)); }
std::string serialize(const Scenario& scenario) { return dump(to_json(scenario)); }

Trace resolve_trace(const ScenarioDocument& doc, std::string_view trace_id)
{
    const auto* ref = doc.find_trace(trace_id);
    if (ref == nullptr) {
        throw TraceError("unknown trace '" + std::string(trace_id) + "'");
    }
    Trace trace;
    trace.id = ref->id;
    const Scenario* previous = &doc.scenario;
    for (std::size_t k = 0; k < ref->steps.size(); ++k) {
        const auto& step = ref->steps[k];
        const auto* rec = doc.find_interaction(step.interaction);
        if (rec == nullptr) {
            throw TraceError("trace '" + ref->id + "' step " + std::to_string(k) + ": unknown interaction '" +
                             step.interaction + "'");
        }
        TraceStep resolved;
        resolved.record = *rec;
        resolved.before = step.before ? *step.before : *previous;
        resolved.after = apply_interaction(resolved.before, *rec);
        resolved.target_choice = step.target_choice;
        resolved.actor_desired = step.actor_desired;
        trace.steps.push_back(std::move(resolved));
        previous = &trace.steps.back().after;
    }
    return trace;
}

std::string digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

} // namespace capkit
