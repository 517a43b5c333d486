#pragma once

// Brute-force reference evaluators used as test oracles. Nothing here calls
// the engine's dominance, enumeration, valuation or frontier code; only the
// domain types are shared.

#include "capkit/judgments.hpp"
#include "capkit/model.hpp"

#include <vector>

namespace capkit::oracle {

/// Literal pairwise scan: keep b unless some b' in q has w(b') > w(b).
FunctioningSet naive_maximal_set(const FunctioningSet& q, const ValuationMap& w);

enum class Formula {
    condition1,             ///< Q* != {} implies Q*' != {}
    condition2,             ///< every maximal b has a weak v-improver in Q'
    weak_benefit,           ///< Q improves to Q' under u
    real_freedom_benefit,   ///< Q* improves to Q*' under r
    life_plan_benefit,      ///< M(Q,v) improves to M(Q',v) under v
    assistance_real_freedom,
    assistance_life_plans,
};

/// Nested-loop evaluation of the quantifier structure exactly as written:
/// no set-inequality guard, except the Q' != Q premise that the life-plan
/// assistance definition states itself.
bool eval_formula(Formula f, const Scenario& before, const Scenario& after);

/// The raw two-clause improvement formula over explicit sets.
bool eval_improves(const FunctioningSet& s, const FunctioningSet& s2, const ValuationMap& w);

/// Freedom set by quantifying over the catalog: b is included when some
/// pattern applied to some accessible resource yields it.
std::vector<FunctioningVector> freedom(const Scenario& s);
std::vector<FunctioningVector> real_freedom(const Scenario& s);
std::vector<FunctioningVector> maximal(const std::vector<FunctioningVector>& q, const ValuationMap& w);

/// Equal as sets of functioning values (catalog duplicates collapse).
bool same_values(const std::vector<FunctioningVector>& a, const std::vector<FunctioningVector>& b);

struct ClauseEvaluation {
    bool paternalistic = false;
    PaternalismClauses clauses;
};

ClauseEvaluation eval_paternalism(const Scenario& before, const Scenario& after, const InteractionRecord& rec);

} // namespace capkit::oracle
