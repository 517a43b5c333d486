#pragma once

#include "capkit/judgments.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace capkit {

inline constexpr const char* kEngineVersion = "1.0.0";

enum class ReportFormat { structured, human };

struct Provenance {
    std::string source; ///< input file name, without directories
    std::string digest;
    std::string engine_version = kEngineVersion;
};

struct TraceReport {
    std::string trace_id;
    DominationResult domination;
    std::vector<Verdict> steps;
};

struct Report {
    Provenance provenance;
    std::vector<Verdict> verdicts;
    std::optional<TraceReport> trace;
};

nlohmann::json to_json(const Evidence& e);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const Report& r);

/// Human-readable rendering of a structured report. Reads only the
/// structured form.
std::string render_human(const nlohmann::json& structured, bool color = false);

std::string emit_report(const Report& r, ReportFormat format, bool color = false);

} // namespace capkit
