#include "capkit/errors.hpp"
#include "capkit/judgments.hpp"
#include "capkit/model.hpp"
#include "capkit/report.hpp"
#include "capkit/scenario_io.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using capkit::ReportFormat;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool use_color()
{
    const char* env = std::getenv("CAPKIT_COLOR");
    const std::string mode = env != nullptr ? env : "auto";
    if (mode == "always") {
        return true;
    }
    if (mode == "never") {
        return false;
    }
    return isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    capkit::ScenarioDocument doc;
    capkit::Provenance provenance;
};

Loaded load(const std::string& path, bool lenient)
{
    const auto text = read_file(path);
    auto result = capkit::parse_document(text, {lenient});
    for (const auto& d : result.diagnostics) {
        std::cerr << path << ": " << d.to_string() << '\n';
    }
    if (!result.ok()) {
        throw InputError(path + ": document rejected");
    }
    Loaded out{std::move(*result.document), {}};
    out.provenance.source = std::filesystem::path(path).filename().string();
    out.provenance.digest = capkit::digest(text);
    return out;
}

int cmd_validate(const std::string& path, bool lenient)
{
    const auto loaded = load(path, lenient);
    std::cout << loaded.provenance.source << ": ok (" << loaded.doc.interactions.size() << " interactions, "
              << loaded.doc.traces.size() << " traces)\n";
    return kExitOk;
}

int cmd_frontier(const std::string& path, const std::string& which, ReportFormat format)
{
    const auto loaded = load(path, false);
    const auto& s = loaded.doc.scenario;
    const auto q = capkit::compute_freedom(s);
    capkit::FunctioningSet chosen;
    if (which == "Q") {
        chosen = q;
    } else if (which == "Qstar") {
        chosen = capkit::compute_real_freedom(s);
    } else {
        chosen = capkit::maximal_set(q, s.v);
    }

    struct Row {
        std::string id;
        capkit::Vector b, r, v;
    };
    std::map<std::string, Row> rows;
    for (const auto& alt : chosen) {
        const auto r = capkit::apply_map(s.r, alt);
        const auto v = capkit::apply_map(s.v, alt);
        for (const auto& id : alt.ids) {
            rows[id] = Row{id, alt.values, r, v};
        }
    }

    if (format == ReportFormat::structured) {
        auto vec = [](const capkit::Vector& x) {
            json a = json::array();
            for (const auto& c : x) {
                a.push_back(c.to_string());
            }
            return a;
        };
        json members = json::array();
        for (const auto& [id, row] : rows) {
            members.push_back({{"id", id}, {"values", vec(row.b)}, {"r", vec(row.r)}, {"v", vec(row.v)}});
        }
        json out = {{"set", which},
                    {"agent", s.agent_id},
                    {"source", loaded.provenance.source},
                    {"digest", loaded.provenance.digest},
                    {"members", members}};
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    }

    std::cout << which << " for " << s.agent_id << " (" << rows.size()
              << (rows.size() == 1 ? " functioning)\n" : " functionings)\n");
    std::size_t width = 0;
    for (const auto& [id, _] : rows) {
        width = std::max(width, id.size());
    }
    for (const auto& [id, row] : rows) {
        std::cout << "  " << id << std::string(width - id.size(), ' ') << "  B=" << capkit::format_vector(row.b) << "  r=" << capkit::format_vector(row.r)
                  << "  v=" << capkit::format_vector(row.v) << '\n';
    }
    return kExitOk;
}

int cmd_judge(const std::string& path, const std::string& interaction, ReportFormat format, bool fail_on_violation,
              bool strict_formula, bool lenient)
{
    const auto loaded = load(path, lenient);
    const auto& doc = loaded.doc;
    capkit::JudgeOptions options;
    options.mode = strict_formula ? capkit::FormulaMode::raw : capkit::FormulaMode::guarded;

    capkit::Report report;
    report.provenance = loaded.provenance;
    if (!interaction.empty() && doc.find_interaction(interaction) == nullptr) {
        throw InputError("unknown interaction '" + interaction + "'");
    }
    for (const auto& rec : doc.interactions) {
        if (!interaction.empty() && rec.id != interaction) {
            continue;
        }
        const auto after = capkit::apply_interaction(doc.scenario, rec);
        report.verdicts.push_back(capkit::judge(doc.scenario, after, rec, nullptr, options));
    }
    std::cout << capkit::emit_report(report, format, use_color());

    bool violated = false;
    for (const auto& v : report.verdicts) {
        violated = violated || capkit::has_violation(v);
    }
    return fail_on_violation && violated ? kExitViolation : kExitOk;
}

int cmd_detect(const std::string& path, const std::string& trace_id, ReportFormat format, bool fail_on_violation)
{
    const auto loaded = load(path, false);
    const auto trace = capkit::resolve_trace(loaded.doc, trace_id);

    capkit::Report report;
    report.provenance = loaded.provenance;
    capkit::TraceReport tr;
    tr.trace_id = trace.id;
    tr.domination = capkit::detect_domination(trace);
    for (const auto& step : trace.steps) {
        tr.steps.push_back(capkit::judge(step.before, step.after, step.record));
    }
    bool violated = tr.domination.finding.has_value();
    for (const auto& v : tr.steps) {
        violated = violated || capkit::has_violation(v);
    }
    report.trace = std::move(tr);
    std::cout << capkit::emit_report(report, format, use_color());
    return fail_on_violation && violated ? kExitViolation : kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"capkit: judgments about how interactions change an agent's capabilities"};
    app.set_version_flag("--version", capkit::kEngineVersion);
    app.require_subcommand(1);

    const auto format_check = CLI::IsMember({"human", "structured"});

    std::string file;
    std::string interaction;
    std::string trace_id;
    std::string set = "Q";
    std::string format_name = "human";
    bool lenient = false;
    bool fail_on_violation = false;
    bool strict_formula = false;

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario document");
    validate->add_option("file", file, "Scenario document")->required();
    validate->add_flag("--lenient", lenient, "Report unknown fields as warnings");

    auto* frontier = app.add_subcommand("frontier", "List the freedom set, real freedom set or maximal life plans");
    frontier->add_option("file", file, "Scenario document")->required();
    frontier->add_option("--set", set, "Which set to print")->check(CLI::IsMember({"Q", "Qstar", "M"}));
    frontier->add_option("--format", format_name, "Output format")->check(format_check);

    auto* judge = app.add_subcommand("judge", "Judge the interactions declared in a document");
    judge->add_option("file", file, "Scenario document")->required();
    judge->add_option("--interaction", interaction, "Judge only this interaction");
    judge->add_option("--format", format_name, "Output format")->check(format_check);
    judge->add_flag("--fail-on-violation", fail_on_violation, "Exit 1 when any verdict records a violation");
    judge->add_flag("--strict-formula", strict_formula, "Drop the set-inequality guard on improvement");
    judge->add_flag("--lenient", lenient, "Report unknown fields as warnings");

    auto* detect = app.add_subcommand("detect", "Judge a declared interaction trace, including domination");
    detect->add_option("file", file, "Scenario document")->required();
    detect->add_option("--trace", trace_id, "Trace id")->required();
    detect->add_option("--format", format_name, "Output format")->check(format_check);
    detect->add_flag("--fail-on-violation", fail_on_violation, "Exit 1 when the trace records a violation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    const auto format = format_name == "structured" ? ReportFormat::structured : ReportFormat::human;
    try {
        if (*validate) {
            return cmd_validate(file, lenient);
        }
        if (*frontier) {
            return cmd_frontier(file, set, format);
        }
        if (*judge) {
            return cmd_judge(file, interaction, format, fail_on_violation, strict_formula, lenient);
        }
        return cmd_detect(file, trace_id, format, fail_on_violation);
    } catch (const InputError& e) {
        std::cerr << "capkit: " << e.what() << '\n';
        return kExitInput;
    } catch (const capkit::Error& e) {
        std::cerr << "capkit: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "capkit: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
