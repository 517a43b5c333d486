#pragma once

#include "capkit/diagnostics.hpp"
#include "capkit/judgments.hpp"
#include "capkit/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capkit {

inline constexpr int kFormatVersion = 1;

struct TraceStepRef {
    std::string interaction;
    std::string target_choice;
    std::string actor_desired;
    /// Explicit before-state; when absent the step chains from the previous one.
    std::optional<Scenario> before;

    friend bool operator==(const TraceStepRef&, const TraceStepRef&) = default;
};

struct TraceRef {
    std::string id;
    std::vector<TraceStepRef> steps;

    friend bool operator==(const TraceRef&, const TraceRef&) = default;
};

struct ScenarioDocument {
    int format_version = kFormatVersion;
    Scenario scenario;
    std::vector<InteractionRecord> interactions;
    std::vector<TraceRef> traces;

    const InteractionRecord* find_interaction(std::string_view id) const;
    const TraceRef* find_trace(std::string_view id) const;

    friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

struct ParseOptions {
    /// Report unknown fields as warnings instead of errors.
    bool lenient = false;
};

struct ParseResult {
    std::optional<ScenarioDocument> document; ///< set only when there are no errors
    Diagnostics diagnostics;

    bool ok() const { return document.has_value(); }
};

/// Reads and fully validates a scenario document.
ParseResult parse_document(std::string_view text, const ParseOptions& options = {});

/// Canonical text: sorted keys, lowest-terms rationals, trailing newline.
std::string serialize(const ScenarioDocument& doc);
std::string serialize(const Scenario& scenario);

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const ScenarioDocument& doc);

/// Materializes a trace: each step's before-state is either declared or
/// chained from the previous step, and its after-state is the interaction
/// applied to it. Chain consistency is checked by detect_domination.
Trace resolve_trace(const ScenarioDocument& doc, std::string_view trace_id);

/// FNV-1a 64-bit digest of the raw input, as `fnv1a64:<hex>`.
std::string digest(std::string_view bytes);

} // namespace capkit
