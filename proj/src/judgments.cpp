#include "capkit/judgments.hpp"

#include "capkit/errors.hpp"

#include <algorithm>
#include <array>

namespace capkit {

namespace {

constexpr std::array<std::string_view, 5> kIntentNames = {"benefit_target", "benefit_actor", "benefit_third_party",
                                                          "mixed", "unknown"};
constexpr std::array<std::string_view, 6> kMechanismNames = {"physical_force",        "threat",
                                                             "information_filtering", "misrepresentation",
                                                             "offer",                 "resource_transfer"};

void sort_evidence(std::vector<Evidence>& ev)
{
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
}

std::string join(const std::vector<std::string>& items)
{
    if (items.empty()) {
        return "none";
    }
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i == 0 ? "" : ",") + items[i];
    }
    return out;
}

std::string describe(const Alternative& a, std::string_view map_name, const Vector& image)
{
    return a.id() + " " + std::string(map_name) + "=" + format_vector(image);
}

template <class Weak, class Strict>
bool improvement(const std::vector<Vector>& before, const std::vector<Vector>& after, Weak weak, Strict strict)
{
    for (const auto& b : before) {
        if (std::none_of(after.begin(), after.end(), [&](const Vector& b2) { return weak(b2, b); })) {
            return false;
        }
    }
    for (const auto& b : before) {
        for (const auto& b2 : after) {
            if (strict(b2, b)) {
                return true;
            }
        }
    }
    return false;
}

bool pareto_weak(const Vector& a, const Vector& b) { return dominates(a, b); }
bool pareto_strict(const Vector& a, const Vector& b) { return strictly_dominates(a, b); }

/// Members of `from` with no weak improver among `to`, each with its image.
std::vector<std::pair<const Alternative*, Vector>> unmatched(const FunctioningSet& from, const ValuationMap& w_from,
                                                             const FunctioningSet& to, const ValuationMap& w_to)
{
    const auto to_images = apply_map(w_to, to);
    std::vector<std::pair<const Alternative*, Vector>> out;
    for (const auto& a : from) {
        auto img = apply_map(w_from, a);
        if (std::none_of(to_images.begin(), to_images.end(), [&](const Vector& t) { return dominates(t, img); })) {
            out.emplace_back(&a, std::move(img));
        }
    }
    return out;
}

std::string format_max(const std::optional<Rational>& m) { return m ? m->to_string() : "none"; }

/// E-dimensions reachable above threshold in `before` but not in `after`.
std::vector<Evidence> dropped_dimensions(const AccessProfile& before, const AccessProfile& after)
{
    std::vector<Evidence> ev;
    for (std::size_t k = 0; k < before.dims.size() && k < after.dims.size(); ++k) {
        const auto& b = before.dims[k];
        const auto& a = after.dims[k];
        if (b.meets_threshold && !a.meets_threshold) {
            ev.push_back({"threshold_dropped", "E:" + b.name,
                          "max r " + format_max(b.max) + " -> " + format_max(a.max) + " below theta " +
                              a.threshold.to_string()});
        }
    }
    return ev;
}

std::vector<std::string> ids_of(const FunctioningSet& s) { return s.ids(); }

bool share_id(const FunctioningSet& a, const FunctioningSet& b)
{
    const auto ia = a.ids();
    const auto ib = b.ids();
    std::vector<std::string> common;
    std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(common));
    return !common.empty();
}

} // namespace

std::string_view to_string(Intent i) { return kIntentNames.at(static_cast<std::size_t>(i)); }
std::string_view to_string(Mechanism m) { return kMechanismNames.at(static_cast<std::size_t>(m)); }

std::optional<Intent> parse_intent(std::string_view s)
{
    for (std::size_t i = 0; i < kIntentNames.size(); ++i) {
        if (kIntentNames[i] == s) {
            return static_cast<Intent>(i);
        }
    }
    return std::nullopt;
}

std::optional<Mechanism> parse_mechanism(std::string_view s)
{
    for (std::size_t i = 0; i < kMechanismNames.size(); ++i) {
        if (kMechanismNames[i] == s) {
            return static_cast<Mechanism>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(FailureKind k)
{
    switch (k) {
    case FailureKind::coercion: return "coercion";
    case FailureKind::deception: return "deception";
    case FailureKind::exploitation: return "exploitation";
    case FailureKind::domination: return "domination";
    }
    return "?";
}

std::string_view to_string(FindingSeverity s) { return s == FindingSeverity::serious ? "serious" : "minor"; }

std::string_view to_string(Condition1Status s)
{
    switch (s) {
    case Condition1Status::pass: return "pass";
    case Condition1Status::violated: return "violated";
    case Condition1Status::vacuous_initially_empty: return "vacuous_initially_empty";
    }
    return "?";
}

std::string_view to_string(Condition2Status s) { return s == Condition2Status::pass ? "pass" : "violated"; }

std::string_view to_string(PaternalismStatus s)
{
    switch (s) {
    case PaternalismStatus::not_paternalistic: return "not_paternalistic";
    case PaternalismStatus::justified: return "justified";
    case PaternalismStatus::unjustified: return "unjustified";
    }
    return "?";
}

std::string_view to_string(DominationStatus s)
{
    switch (s) {
    case DominationStatus::not_evaluated: return "not_evaluated";
    case DominationStatus::insufficient_evidence: return "insufficient_evidence";
    case DominationStatus::none: return "none";
    case DominationStatus::finding: return "finding";
    }
    return "?";
}

std::string_view BeneficenceFlags::label() const
{
    if (real_freedom || life_plan) {
        return "meaningful";
    }
    return weak ? "weak only" : "none";
}

bool ScenarioDelta::empty() const
{
    return resources_added.empty() && resources_removed.empty() && characteristics_delta.empty() &&
           social_delta.empty() && utilization_added.empty() && utilization_removed.empty();
}

// -- apply_interaction ----------------------------------------------------------------

Scenario apply_interaction(const Scenario& before, const InteractionRecord& rec)
{
    Scenario after = before;
    const auto& d = rec.deltas;
    const std::string where = "interaction '" + rec.id + "': ";

    for (const auto& key : d.utilization_removed) {
        auto it = std::find_if(after.utilization.begin(), after.utilization.end(), [&](const UtilizationEntry& e) {
            return e.pattern_id == key.pattern_id && e.resource_id == key.resource_id;
        });
        if (it == after.utilization.end()) {
            throw DeltaError(where + "no utilization entry '" + key.pattern_id + "' on resource '" + key.resource_id +
                             "' to remove");
        }
        after.utilization.erase(it);
    }

    for (const auto& id : d.resources_removed) {
        auto it = std::find_if(after.resources.begin(), after.resources.end(),
                               [&](const ResourceVector& x) { return x.id == id; });
        if (it == after.resources.end()) {
            throw DeltaError(where + "no resource '" + id + "' to remove");
        }
        after.resources.erase(it);
        // Entries that used the resource can no longer be enacted.
        std::erase_if(after.utilization, [&](const UtilizationEntry& e) { return e.resource_id == id; });
    }

    for (const auto& x : d.resources_added) {
        if (after.find_resource(x.id) != nullptr) {
            throw DeltaError(where + "resource '" + x.id + "' already exists");
        }
        if (x.values.size() != after.schemas.resources.size()) {
            throw DeltaError(where + "added resource '" + x.id + "' has " + std::to_string(x.values.size()) +
                             " components, schema has " + std::to_string(after.schemas.resources.size()));
        }
        after.resources.push_back(x);
    }

    auto shift = [&](ContextVector& ctx, const std::map<std::string, Rational>& offsets) {
        for (const auto& [name, offset] : offsets) {
            auto it = ctx.values.find(name);
            if (it == ctx.values.end()) {
                throw DeltaError(where + "no " + std::string(to_string(ctx.kind)) + " component '" + name + "'");
            }
            it->second += offset;
        }
    };
    shift(after.characteristics, d.characteristics_delta);
    shift(after.social, d.social_delta);

    for (const auto& e : d.utilization_added) {
        after.utilization.push_back(e);
    }

    for (const auto& diag : validate_scenario(after, "/after")) {
        if (diag.severity == Severity::error) {
            throw DeltaError(where + diag.message + " (" + diag.path + ")");
        }
    }
    return after;
}

// -- quantified conditions --------------------------------------------------------------

bool improves(const FunctioningSet& before, const FunctioningSet& after, const ValuationMap& w, FormulaMode mode)
{
    if (mode == FormulaMode::guarded && before.same_values(after)) {
        return false;
    }
    return improvement(apply_map(w, before), apply_map(w, after), pareto_weak, pareto_strict);
}

Condition1Result condition1(const Scenario& before, const Scenario& after)
{
    Condition1Result res;
    res.before = access_profile(before);
    res.after = access_profile(after);
    const auto star_before = compute_real_freedom(before);
    const auto star_after = compute_real_freedom(after);

    if (star_before.empty()) {
        res.status = Condition1Status::vacuous_initially_empty;
        res.evidence.push_back({"real_freedom_initially_empty", "Q*", "no functioning meets every threshold before"});
        for (std::size_t k = 0; k < res.before.dims.size() && k < res.after.dims.size(); ++k) {
            const auto& b = res.before.dims[k];
            const auto& a = res.after.dims[k];
            if (b.max && (!a.max || *a.max < *b.max)) {
                res.evidence.push_back(
                    {"access_reduced", "E:" + b.name, "max r " + format_max(b.max) + " -> " + format_max(a.max)});
            }
        }
    } else if (star_after.empty()) {
        res.status = Condition1Status::violated;
        res.evidence.push_back(
            {"real_freedom_emptied", "Q*", "before: " + join(ids_of(star_before)) + "; after: none"});
        auto dropped = dropped_dimensions(res.before, res.after);
        res.evidence.insert(res.evidence.end(), dropped.begin(), dropped.end());
    } else {
        res.status = Condition1Status::pass;
    }
    sort_evidence(res.evidence);
    return res;
}

Condition2Result condition2(const Scenario& before, const Scenario& after)
{
    Condition2Result res;
    const auto m = maximal_set(compute_freedom(before), before.v);
    const auto q_after = compute_freedom(after);
    for (const auto& [alt, img] : unmatched(m, before.v, q_after, after.v)) {
        res.evidence.push_back({"unmatched_maximal", alt->id(), describe(*alt, "v", img) + " has no weak improver after"});
    }
    res.status = res.evidence.empty() ? Condition2Status::pass : Condition2Status::violated;
    sort_evidence(res.evidence);
    return res;
}

BeneficenceFlags classify_beneficence(const Scenario& before, const Scenario& after, FormulaMode mode)
{
    const auto q = compute_freedom(before);
    const auto q2 = compute_freedom(after);
    BeneficenceFlags flags;
    flags.weak = improves(q, q2, before.u_or_v(), mode);
    flags.real_freedom = improves(compute_real_freedom(before), compute_real_freedom(after), before.r, mode);
    flags.life_plan = improves(maximal_set(q, before.v), maximal_set(q2, before.v), before.v, mode);
    return flags;
}

bool assistance_real_freedom(const Scenario& before, const Scenario& after, FormulaMode mode)
{
    const auto s = compute_real_freedom(before);
    const auto s2 = compute_real_freedom(after);
    if (mode == FormulaMode::guarded && s.same_values(s2)) {
        return false;
    }
    const auto& theta = before.theta;
    return improvement(
        apply_map(before.r, s), apply_map(before.r, s2),
        [&](const Vector& a, const Vector& b) { return theta_prefers(a, b, theta, Strictness::weak); },
        [&](const Vector& a, const Vector& b) { return theta_prefers(a, b, theta, Strictness::strict); });
}

bool assistance_life_plans(const Scenario& before, const Scenario& after)
{
    const auto q = compute_freedom(before);
    const auto q2 = compute_freedom(after);
    if (q.same_values(q2)) {
        return false;
    }
    const auto m_images = apply_map(before.v, maximal_set(q, before.v));
    const auto q2_images = apply_map(before.v, q2);
    if (before.p_threshold) {
        const auto& theta = *before.p_threshold;
        return improvement(
            m_images, q2_images,
            [&](const Vector& a, const Vector& b) { return theta_prefers(a, b, theta, Strictness::weak); },
            [&](const Vector& a, const Vector& b) { return theta_prefers(a, b, theta, Strictness::strict); });
    }
    return improvement(m_images, q2_images, pareto_weak, pareto_strict);
}

// -- paternalism ----------------------------------------------------------------------------

PaternalismResult paternalism_check(const Scenario& before, const Scenario& after, const InteractionRecord& rec)
{
    PaternalismResult res;
    if (rec.intent != Intent::benefit_target) {
        return res;
    }
    const auto q = compute_freedom(before);
    const auto q2 = compute_freedom(after);
    const bool restricts = q2.is_subset_of(q) && !q2.same_values(q);
    if (!restricts && !rec.promoted_outcome) {
        return res;
    }

    const auto m_true = maximal_set(q, before.v);
    res.evidence.push_back({"maximal_true", "M", join(m_true.ids())});
    if (restricts) {
        res.evidence.push_back({"restriction", "Q'", "before: " + join(q.ids()) + "; after: " + join(q2.ids())});
    }

    if (rec.promoted_outcome) {
        res.clauses.a = m_true.contains_id(*rec.promoted_outcome);
        res.evidence.push_back({"promoted_outcome", *rec.promoted_outcome,
                                res.clauses.a ? "maximal under true v" : "not maximal under true v"});
    } else {
        const auto m_after = maximal_set(q2, before.v);
        res.clauses.a = !m_after.empty() && m_after.is_subset_of(m_true);
        res.evidence.push_back({"maximal_after_restriction", "M'", join(m_after.ids())});
    }
    if (rec.actor_estimate_of_target_values) {
        const auto m_est = maximal_set(q, *rec.actor_estimate_of_target_values);
        res.evidence.push_back({"maximal_actor_estimate", "M_est", join(m_est.ids())});
    }

    if (rec.believed_scenario) {
        const auto& believed = *rec.believed_scenario;
        const auto m_believed = maximal_set(compute_freedom(believed), believed.v);
        res.clauses.b = m_believed.ids() != m_true.ids();
        res.evidence.push_back({"maximal_believed", "M_believed", join(m_believed.ids())});
    } else {
        res.evidence.push_back({"no_believed_scenario", "believed_scenario", "target not shown to be ignorant"});
    }
    res.clauses.c = !rec.communication_feasible;
    res.clauses.d = rec.proportionality_ok;
    res.evidence.push_back({"flag", "communication_feasible", rec.communication_feasible ? "true" : "false"});
    res.evidence.push_back({"flag", "proportionality_ok", rec.proportionality_ok ? "true" : "false"});

    const std::array<std::pair<char, bool>, 4> clauses = {
        {{'a', res.clauses.a}, {'b', res.clauses.b}, {'c', res.clauses.c}, {'d', res.clauses.d}}};
    for (const auto& [name, holds] : clauses) {
        if (!holds) {
            res.failed.push_back(name);
        }
    }
    res.status = res.failed.empty() ? PaternalismStatus::justified : PaternalismStatus::unjustified;
    sort_evidence(res.evidence);
    return res;
}

// -- failure-mode detectors -----------------------------------------------------------------

std::optional<Finding> detect_coercion(const Scenario& before, const Scenario& after, const InteractionRecord& rec)
{
    const bool threat = rec.has_mechanism(Mechanism::threat);
    const bool force = rec.has_mechanism(Mechanism::physical_force);
    if (!threat && !force) {
        return std::nullopt;
    }
    if (threat && !rec.threat_scenario) {
        throw IncompleteRecordError("interaction '" + rec.id + "' declares a threat but no threat_scenario");
    }
    if (rec.actor_has_right) {
        return std::nullopt;
    }
    // Force without a declared threat imposes the after-state directly.
    const Scenario& imposed = rec.threat_scenario ? *rec.threat_scenario : after;
    const char* label = rec.threat_scenario ? "threat scenario" : "imposed scenario";

    const auto q = compute_freedom(before);
    const auto q_imposed = compute_freedom(imposed);

    Finding f{FailureKind::coercion, FindingSeverity::minor, {}};
    bool serious = false;
    for (const auto& [alt, img] : unmatched(q, before.v, q_imposed, imposed.v)) {
        serious = true;
        f.evidence.push_back({"v_worsened", alt->id(), describe(*alt, "v", img) + " has no weak improver in " + label});
    }
    for (auto& ev : dropped_dimensions(access_profile(before), access_profile(imposed))) {
        serious = true;
        f.evidence.push_back(std::move(ev));
    }
    if (!compute_real_freedom(before).empty() && compute_real_freedom(imposed).empty()) {
        serious = true;
        f.evidence.push_back({"real_freedom_emptied", "Q*", std::string(label) + " leaves no functioning above every threshold"});
    }
    bool minor = false;
    for (const auto& [alt, img] : unmatched(q, before.u_or_v(), q_imposed, imposed.u_or_v())) {
        minor = true;
        f.evidence.push_back({"u_worsened", alt->id(), describe(*alt, "u", img) + " has no weak improver in " + label});
    }
    if (!serious && !minor) {
        return std::nullopt;
    }
    f.severity = serious ? FindingSeverity::serious : FindingSeverity::minor;
    for (Mechanism m : {Mechanism::threat, Mechanism::physical_force}) {
        if (rec.has_mechanism(m)) {
            f.evidence.push_back({"mechanism", std::string(to_string(m)), "declared"});
        }
    }
    f.evidence.push_back({"flag", "actor_has_right", "false"});
    sort_evidence(f.evidence);
    return f;
}

std::optional<Finding> detect_deception(const Scenario& before, const Scenario& after, const InteractionRecord& rec)
{
    (void)before;
    const bool filtering = rec.has_mechanism(Mechanism::information_filtering);
    const bool misrep = rec.has_mechanism(Mechanism::misrepresentation);
    if (!filtering && !misrep) {
        return std::nullopt;
    }
    if (!rec.believed_scenario) {
        throw IncompleteRecordError("interaction '" + rec.id +
                                    "' declares information shaping but no believed_scenario");
    }
    const auto& believed = *rec.believed_scenario;
    const auto q_true = compute_freedom(after);
    const auto m_true = maximal_set(q_true, after.v);
    const auto m_believed = maximal_set(compute_freedom(believed), believed.v);
    if (share_id(m_true, m_believed)) {
        return std::nullopt;
    }

    Finding f{FailureKind::deception, FindingSeverity::minor, {}};
    f.evidence.push_back({"maximal_true", "M", join(m_true.ids())});
    f.evidence.push_back({"maximal_believed", "M_believed", join(m_believed.ids())});

    // The choices the target would actually make, as they exist in the true
    // after-state.
    FunctioningSet chosen;
    for (const auto& id : m_believed.ids()) {
        if (const auto* fv = after.find_functioning(id); fv != nullptr && q_true.contains(fv->values)) {
            chosen.insert(*fv);
        } else {
            f.evidence.push_back({"infeasible_belief", id, "believed-maximal option is not available"});
        }
    }
    bool serious = false;
    for (const auto& [alt, img] : unmatched(m_true, after.v, chosen, after.v)) {
        serious = true;
        f.evidence.push_back({"v_worsened", alt->id(), describe(*alt, "v", img) + " has no weak improver among believed choices"});
    }
    for (const auto& alt : chosen) {
        const auto img = apply_map(after.r, alt);
        if (!dominates(img, after.theta)) {
            serious = true;
            f.evidence.push_back({"below_threshold", alt.id(), describe(alt, "r", img) + " is below theta"});
        }
    }
    f.severity = serious ? FindingSeverity::serious : FindingSeverity::minor;
    for (Mechanism m : {Mechanism::information_filtering, Mechanism::misrepresentation}) {
        if (rec.has_mechanism(m)) {
            f.evidence.push_back({"mechanism", std::string(to_string(m)), "declared"});
        }
    }
    sort_evidence(f.evidence);
    return f;
}

std::optional<Finding> detect_exploitation(const Scenario& before, const Scenario& after,
                                           const InteractionRecord& rec)
{
    if (rec.intent != Intent::benefit_actor && rec.intent != Intent::benefit_third_party) {
        return std::nullopt;
    }
    const auto coercion = detect_coercion(before, after, rec);
    const auto deception = detect_deception(before, after, rec);
    if (!coercion && !deception && !rec.unfair_terms) {
        return std::nullopt;
    }
    Finding f{FailureKind::exploitation, FindingSeverity::minor, {}};
    f.evidence.push_back({"intent", std::string(to_string(rec.intent)), "declared"});
    for (const auto* support : {&coercion, &deception}) {
        if (*support) {
            const auto& s = **support;
            f.evidence.push_back({"via", std::string(to_string(s.kind)), std::string(to_string(s.severity))});
            if (s.severity == FindingSeverity::serious) {
                f.severity = FindingSeverity::serious;
            }
        }
    }
    if (rec.unfair_terms) {
        f.evidence.push_back({"flag", "unfair_terms", "true"});
    }
    sort_evidence(f.evidence);
    return f;
}

DominationResult detect_domination(const Trace& trace)
{
    if (trace.steps.empty()) {
        throw TraceError("trace '" + trace.id + "' has no steps");
    }
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        if (!(apply_interaction(step.before, step.record) == step.after)) {
            throw TraceError("trace '" + trace.id + "' step " + std::to_string(k) +
                             ": after-scenario does not match its interaction");
        }
        if (k + 1 < trace.steps.size() && !(step.after == trace.steps[k + 1].before)) {
            throw TraceError("trace '" + trace.id + "' step " + std::to_string(k + 1) +
                             ": before-scenario does not chain from the previous step");
        }
    }

    DominationResult res;
    if (trace.steps.size() < 2) {
        res.status = DominationStatus::insufficient_evidence;
        return res;
    }

    std::set<std::string> desired;
    bool outside_m = false;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        const std::string subject = "step " + std::to_string(k) + " (" + step.record.id + ")";
        if (step.target_choice != step.actor_desired) {
            res.steps.push_back({"not_followed", subject,
                                 "chose " + step.target_choice + ", actor desired " + step.actor_desired});
            continue;
        }
        desired.insert(step.actor_desired);
        const auto m = maximal_set(compute_freedom(step.after), step.after.v);
        const bool in_m = m.contains_id(step.target_choice);
        outside_m = outside_m || !in_m;
        res.steps.push_back({"followed", subject,
                             "chose " + step.target_choice + (in_m ? " (maximal)" : " (outside M: " + join(m.ids()) + ")")});
    }
    sort_evidence(res.steps);

    if (desired.size() >= 2 && outside_m) {
        res.status = DominationStatus::finding;
        Finding f{FailureKind::domination, FindingSeverity::serious, res.steps};
        f.evidence.push_back({"distinct_desired_outcomes", "trace " + trace.id,
                              join(std::vector<std::string>(desired.begin(), desired.end()))});
        sort_evidence(f.evidence);
        res.finding = std::move(f);
    } else {
        res.status = DominationStatus::none;
    }
    return res;
}

// -- aggregation ----------------------------------------------------------------------------

Verdict judge(const Scenario& before, const Scenario& after, const InteractionRecord& rec, const Trace* trace,
              const JudgeOptions& options)
{
    Verdict v;
    v.interaction_id = rec.id;
    v.actor_id = rec.actor_id;
    v.target = rec.target;
    v.condition1 = condition1(before, after);
    v.condition2 = condition2(before, after);
    v.beneficence = classify_beneficence(before, after, options.mode);
    v.assistance_real_freedom = assistance_real_freedom(before, after, options.mode);
    v.assistance_life_plans = assistance_life_plans(before, after);
    v.paternalism = paternalism_check(before, after, rec);

    if (auto f = detect_coercion(before, after, rec)) {
        v.failure_modes.push_back(std::move(*f));
    }
    if (auto f = detect_deception(before, after, rec)) {
        v.failure_modes.push_back(std::move(*f));
    }
    if (auto f = detect_exploitation(before, after, rec)) {
        v.failure_modes.push_back(std::move(*f));
    }
    if (trace != nullptr) {
        v.domination = detect_domination(*trace);
        if (v.domination.finding) {
            v.failure_modes.push_back(*v.domination.finding);
        }
    }

    for (const auto* s : {&before, &after}) {
        const char* tag = s == &before ? "before" : "after";
        const auto m = maximal_set(compute_freedom(*s), s->v);
        for (const auto& alt : m) {
            const auto img = apply_map(s->r, alt);
            if (!dominates(img, s->theta)) {
                v.maximal_outside_real_freedom.push_back(
                    {"maximal_below_threshold", std::string(tag) + ":" + alt.id(), describe(alt, "r", img)});
            }
        }
    }
    sort_evidence(v.maximal_outside_real_freedom);
    return v;
}

bool has_violation(const Verdict& v)
{
    return v.condition1.status == Condition1Status::violated || v.condition2.status == Condition2Status::violated ||
           v.paternalism.status == PaternalismStatus::unjustified || !v.failure_modes.empty();
}

} // namespace capkit
