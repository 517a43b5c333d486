#pragma once

#include "capkit/model.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace capkit {

enum class Intent { benefit_target, benefit_actor, benefit_third_party, mixed, unknown };

enum class Mechanism { physical_force, threat, information_filtering, misrepresentation, offer, resource_transfer };

std::string_view to_string(Intent i);
std::string_view to_string(Mechanism m);
std::optional<Intent> parse_intent(std::string_view s);
std::optional<Mechanism> parse_mechanism(std::string_view s);

/// Identifies a utilization entry: a pattern applied to a resource.
struct UtilizationKey {
    std::string pattern_id;
    std::string resource_id;

    friend bool operator==(const UtilizationKey&, const UtilizationKey&) = default;
};

struct ScenarioDelta {
    std::vector<ResourceVector> resources_added;
    std::vector<std::string> resources_removed;
    std::map<std::string, Rational> characteristics_delta; ///< offsets added to existing components
    std::map<std::string, Rational> social_delta;
    std::vector<UtilizationEntry> utilization_added;
    std::vector<UtilizationKey> utilization_removed;

    bool empty() const;

    friend bool operator==(const ScenarioDelta&, const ScenarioDelta&) = default;
};

/// A change another agent makes to the target's scenario, with the declared
/// normative facts about it. Intent and rights are inputs, never inferred.
struct InteractionRecord {
    std::string id;
    std::string actor_id;
    std::string target;
    ScenarioDelta deltas;
    Intent intent = Intent::unknown;
    std::set<Mechanism> mechanisms;
    bool actor_has_right = false;
    bool communication_feasible = true;
    bool proportionality_ok = false;
    bool unfair_terms = false;
    std::optional<std::string> promoted_outcome;
    std::optional<ValuationMap> actor_estimate_of_target_values;
    std::optional<Scenario> believed_scenario;
    std::optional<Scenario> threat_scenario;

    bool has_mechanism(Mechanism m) const { return mechanisms.count(m) != 0; }

    friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

/// One witness supporting a judgment. Ordered so that evidence lists can be
/// sorted for deterministic output.
struct Evidence {
    std::string kind;
    std::string subject;
    std::string detail;

    friend auto operator<=>(const Evidence&, const Evidence&) = default;
};

enum class Condition1Status { pass, violated, vacuous_initially_empty };
enum class Condition2Status { pass, violated };

struct Condition1Result {
    Condition1Status status = Condition1Status::pass;
    AccessProfile before;
    AccessProfile after;
    std::vector<Evidence> evidence;
};

struct Condition2Result {
    Condition2Status status = Condition2Status::pass;
    std::vector<Evidence> evidence;
};

struct BeneficenceFlags {
    bool weak = false;         ///< improves Q under u
    bool real_freedom = false; ///< improves Q* under r
    bool life_plan = false;    ///< improves M under v

    /// "none", "weak only" or "meaningful".
    std::string_view label() const;

    friend bool operator==(const BeneficenceFlags&, const BeneficenceFlags&) = default;
};

enum class PaternalismStatus { not_paternalistic, justified, unjustified };

struct PaternalismClauses {
    bool a = false; ///< promoted outcome is maximal under the target's true values
    bool b = false; ///< target is relevantly ignorant
    bool c = false; ///< informing the target is not feasible
    bool d = false; ///< the means are proportionate

    friend bool operator==(const PaternalismClauses&, const PaternalismClauses&) = default;
};

struct PaternalismResult {
    PaternalismStatus status = PaternalismStatus::not_paternalistic;
    PaternalismClauses clauses;
    std::vector<char> failed; ///< subset of {'a','b','c','d'}, sorted
    std::vector<Evidence> evidence;
};

enum class FailureKind { coercion, deception, exploitation, domination };
enum class FindingSeverity { serious, minor };

std::string_view to_string(FailureKind k);
std::string_view to_string(FindingSeverity s);
std::string_view to_string(Condition1Status s);
std::string_view to_string(Condition2Status s);
std::string_view to_string(PaternalismStatus s);

struct Finding {
    FailureKind kind = FailureKind::coercion;
    FindingSeverity severity = FindingSeverity::serious;
    std::vector<Evidence> evidence;
};

enum class DominationStatus { not_evaluated, insufficient_evidence, none, finding };

std::string_view to_string(DominationStatus s);

struct DominationResult {
    DominationStatus status = DominationStatus::not_evaluated;
    std::optional<Finding> finding;
    std::vector<Evidence> steps;
};

struct TraceStep {
    InteractionRecord record;
    Scenario before;
    Scenario after;
    std::string target_choice;
    std::string actor_desired;
};

struct Trace {
    std::string id;
    std::vector<TraceStep> steps;
};

struct Verdict {
    std::string interaction_id;
    std::string actor_id;
    std::string target;
    Condition1Result condition1;
    Condition2Result condition2;
    BeneficenceFlags beneficence;
    bool assistance_real_freedom = false;
    bool assistance_life_plans = false;
    PaternalismResult paternalism;
    std::vector<Finding> failure_modes; ///< overlapping, ordered by kind
    DominationResult domination;
    /// Maximal life plans that fall below a threshold, before and after.
    std::vector<Evidence> maximal_outside_real_freedom;
};

/// Whether the improvement relation carries the set-inequality guard.
enum class FormulaMode { guarded, raw };

struct JudgeOptions {
    FormulaMode mode = FormulaMode::guarded;
};

Scenario apply_interaction(const Scenario& before, const InteractionRecord& rec);

/// Every member of `before` has a weak improver in `after` under `w`, and
/// some member has a strict one. In guarded mode the sets must also differ.
bool improves(const FunctioningSet& before, const FunctioningSet& after, const ValuationMap& w,
              FormulaMode mode = FormulaMode::guarded);

Condition1Result condition1(const Scenario& before, const Scenario& after);
Condition2Result condition2(const Scenario& before, const Scenario& after);
BeneficenceFlags classify_beneficence(const Scenario& before, const Scenario& after,
                                      FormulaMode mode = FormulaMode::guarded);
bool assistance_real_freedom(const Scenario& before, const Scenario& after, FormulaMode mode = FormulaMode::guarded);
bool assistance_life_plans(const Scenario& before, const Scenario& after);
PaternalismResult paternalism_check(const Scenario& before, const Scenario& after, const InteractionRecord& rec);

std::optional<Finding> detect_coercion(const Scenario& before, const Scenario& after, const InteractionRecord& rec);
std::optional<Finding> detect_deception(const Scenario& before, const Scenario& after, const InteractionRecord& rec);
std::optional<Finding> detect_exploitation(const Scenario& before, const Scenario& after,
                                           const InteractionRecord& rec);
DominationResult detect_domination(const Trace& trace);

Verdict judge(const Scenario& before, const Scenario& after, const InteractionRecord& rec,
              const Trace* trace = nullptr, const JudgeOptions& options = {});

/// True when the verdict records a violated condition, unjustified
/// paternalism, or any failure mode.
bool has_violation(const Verdict& v);

} // namespace capkit
