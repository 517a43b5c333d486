#include "capkit/oracle.hpp"

#include "capkit/errors.hpp"

#include <algorithm>
#include <set>

namespace capkit::oracle {

namespace {

using Vec = std::vector<Rational>;

bool geq(const Vec& x, const Vec& y)
{
    if (x.size() != y.size()) {
        throw SchemaError("oracle: length mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= y[i])) {
            return false;
        }
    }
    return true;
}

bool gt(const Vec& x, const Vec& y)
{
    if (!geq(x, y)) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] > y[j]) {
            return true;
        }
    }
    return false;
}

std::set<std::size_t> sat(const Vec& x, const Vec& theta)
{
    std::set<std::size_t> out;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] >= theta[k]) {
            out.insert(k);
        }
    }
    return out;
}

bool proper_superset(const std::set<std::size_t>& a, const std::set<std::size_t>& b)
{
    return a.size() > b.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
}

bool theta_geq(const Vec& x, const Vec& y, const Vec& theta)
{
    return proper_superset(sat(x, theta), sat(y, theta)) || geq(x, y);
}

bool theta_gt(const Vec& x, const Vec& y, const Vec& theta)
{
    return proper_superset(sat(x, theta), sat(y, theta)) || gt(x, y);
}

Vec image(const ValuationMap& w, const std::string& id, const Vec& values)
{
    if (const auto* t = std::get_if<ValuationTable>(&w.form)) {
        auto it = t->rows.find(id);
        if (it == t->rows.end()) {
            throw ValuationError("oracle: no row for '" + id + "'");
        }
        return it->second;
    }
    Vec out;
    for (const auto& row : std::get<LinearMap>(w.form).matrix) {
        Rational acc;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc = acc + row[j] * values.at(j);
        }
        out.push_back(acc);
    }
    return out;
}

Vec image(const ValuationMap& w, const FunctioningVector& f) { return image(w, f.id, f.values); }

template <class Weak, class Strict>
bool two_clause(const std::vector<Vec>& s, const std::vector<Vec>& s2, Weak weak, Strict strict)
{
    bool forall = true;
    for (const auto& b : s) {
        bool exists = false;
        for (const auto& b2 : s2) {
            exists = exists || weak(b2, b);
        }
        forall = forall && exists;
    }
    bool some = false;
    for (const auto& b : s) {
        for (const auto& b2 : s2) {
            some = some || strict(b2, b);
        }
    }
    return forall && some;
}

std::vector<Vec> images(const std::vector<FunctioningVector>& q, const ValuationMap& w)
{
    std::vector<Vec> out;
    for (const auto& b : q) {
        out.push_back(image(w, b));
    }
    return out;
}

std::set<Vec> value_set(const std::vector<FunctioningVector>& q)
{
    std::set<Vec> out;
    for (const auto& b : q) {
        out.insert(b.values);
    }
    return out;
}

std::set<std::string> id_set(const std::vector<FunctioningVector>& q)
{
    std::set<std::string> out;
    for (const auto& f : q) {
        out.insert(f.id);
    }
    return out;
}

} // namespace

std::vector<FunctioningVector> freedom(const Scenario& s)
{
    std::vector<FunctioningVector> out;
    for (const auto& b : s.functionings) {
        bool reachable = false;
        for (const auto& f : s.utilization) {
            if (f.output != b.id) {
                continue;
            }
            bool resource_present = false;
            for (const auto& x : s.resources) {
                resource_present = resource_present || x.id == f.resource_id;
            }
            bool guards_ok = true;
            for (const auto& g : f.guards) {
                const auto& ctx = g.context == ContextKind::characteristics ? s.characteristics : s.social;
                auto it = ctx.values.find(g.component);
                guards_ok = guards_ok && it != ctx.values.end() && it->second >= g.min;
            }
            reachable = reachable || (resource_present && guards_ok);
        }
        if (reachable) {
            out.push_back(b);
        }
    }
    return out;
}

std::vector<FunctioningVector> maximal(const std::vector<FunctioningVector>& q, const ValuationMap& w)
{
    std::vector<FunctioningVector> out;
    for (const auto& b : q) {
        bool dominated = false;
        for (const auto& b2 : q) {
            if (gt(image(w, b2), image(w, b))) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.push_back(b);
        }
    }
    return out;
}

bool same_values(const std::vector<FunctioningVector>& a, const std::vector<FunctioningVector>& b)
{
    return value_set(a) == value_set(b);
}

std::vector<FunctioningVector> real_freedom(const Scenario& s)
{
    std::vector<FunctioningVector> out;
    for (const auto& b : freedom(s)) {
        if (geq(image(s.r, b), s.theta)) {
            out.push_back(b);
        }
    }
    return out;
}

FunctioningSet naive_maximal_set(const FunctioningSet& q, const ValuationMap& w)
{
    std::vector<std::pair<const Alternative*, Vec>> imgs;
    for (const auto& a : q) {
        imgs.emplace_back(&a, image(w, a.ids.front(), a.values));
    }
    FunctioningSet out;
    for (const auto& [a, img] : imgs) {
        bool dominated = false;
        for (const auto& [a2, img2] : imgs) {
            if (gt(img2, img)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.insert(*a);
        }
    }
    return out;
}

bool eval_improves(const FunctioningSet& s, const FunctioningSet& s2, const ValuationMap& w)
{
    std::vector<Vec> a;
    std::vector<Vec> b;
    for (const auto& x : s) {
        a.push_back(image(w, x.ids.front(), x.values));
    }
    for (const auto& x : s2) {
        b.push_back(image(w, x.ids.front(), x.values));
    }
    return two_clause(a, b, geq, gt);
}

bool eval_formula(Formula f, const Scenario& before, const Scenario& after)
{
    switch (f) {
    case Formula::condition1:
        return real_freedom(before).empty() || !real_freedom(after).empty();
    case Formula::condition2: {
        const auto m = maximal(freedom(before), before.v);
        const auto q2 = freedom(after);
        for (const auto& b : m) {
            bool exists = false;
            for (const auto& b2 : q2) {
                exists = exists || geq(image(after.v, b2), image(before.v, b));
            }
            if (!exists) {
                return false;
            }
        }
        return true;
    }
    case Formula::weak_benefit:
        return two_clause(images(freedom(before), before.u_or_v()), images(freedom(after), before.u_or_v()), geq, gt);
    case Formula::real_freedom_benefit:
        return two_clause(images(real_freedom(before), before.r), images(real_freedom(after), before.r), geq, gt);
    case Formula::life_plan_benefit:
        return two_clause(images(maximal(freedom(before), before.v), before.v),
                          images(maximal(freedom(after), before.v), before.v), geq, gt);
    case Formula::assistance_real_freedom: {
        const auto& theta = before.theta;
        return two_clause(
            images(real_freedom(before), before.r), images(real_freedom(after), before.r),
            [&](const Vec& x, const Vec& y) { return theta_geq(x, y, theta); },
            [&](const Vec& x, const Vec& y) { return theta_gt(x, y, theta); });
    }
    case Formula::assistance_life_plans: {
        const auto q = freedom(before);
        const auto q2 = freedom(after);
        if (value_set(q) == value_set(q2)) {
            return false;
        }
        const auto m = images(maximal(q, before.v), before.v);
        const auto q2i = images(q2, before.v);
        if (before.p_threshold) {
            const auto& theta = *before.p_threshold;
            return two_clause(
                m, q2i, [&](const Vec& x, const Vec& y) { return theta_geq(x, y, theta); },
                [&](const Vec& x, const Vec& y) { return theta_gt(x, y, theta); });
        }
        return two_clause(m, q2i, geq, gt);
    }
    }
    return false;
}

ClauseEvaluation eval_paternalism(const Scenario& before, const Scenario& after, const InteractionRecord& rec)
{
    ClauseEvaluation out;
    const auto q = freedom(before);
    const auto q2 = freedom(after);
    const auto qv = value_set(q);
    const auto q2v = value_set(q2);
    const bool shrinks = q2v != qv && std::includes(qv.begin(), qv.end(), q2v.begin(), q2v.end());
    out.paternalistic = rec.intent == Intent::benefit_target && (shrinks || rec.promoted_outcome.has_value());
    if (!out.paternalistic) {
        return out;
    }
    const auto m = maximal(q, before.v);
    const auto m_ids = id_set(m);
    if (rec.promoted_outcome) {
        out.clauses.a = m_ids.count(*rec.promoted_outcome) != 0;
    } else {
        const auto m2 = value_set(maximal(q2, before.v));
        const auto mv = value_set(m);
        out.clauses.a = !m2.empty() && std::includes(mv.begin(), mv.end(), m2.begin(), m2.end());
    }
    if (rec.believed_scenario) {
        const auto& bs = *rec.believed_scenario;
        out.clauses.b = id_set(maximal(freedom(bs), bs.v)) != m_ids;
    }
    out.clauses.c = !rec.communication_feasible;
    out.clauses.d = rec.proportionality_ok;
    return out;
}

} // namespace capkit::oracle
