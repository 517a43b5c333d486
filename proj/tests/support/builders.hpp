#pragma once

#include "capkit/judgments.hpp"
#include "capkit/model.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace capkit::testutil {

inline Vector vec(std::initializer_list<int> xs)
{
    Vector v;
    for (int x : xs) {
        v.push_back(Rational(x));
    }
    return v;
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Small scenarios built one functioning at a time. Each reachable
/// functioning gets its own pattern `p_<id>` on the shared resource `x`.
class ScenarioBuilder {
public:
    ScenarioBuilder(int nb, int ne, int np)
    {
        s_.agent_id = "agent";
        for (int i = 0; i < nb; ++i) {
            s_.schemas.b.dims.push_back({"b" + std::to_string(i), {}});
        }
        for (int i = 0; i < ne; ++i) {
            s_.schemas.e.dims.push_back({"e" + std::to_string(i), {}});
        }
        for (int i = 0; i < np; ++i) {
            s_.schemas.p.dims.push_back({"p" + std::to_string(i), {}});
        }
        s_.schemas.resources = {{"amount", {}}};
        s_.resources.push_back({"x", {Rational(1)}});
        s_.r.form = ValuationTable{};
        s_.v.form = ValuationTable{};
        s_.theta = Vector(static_cast<std::size_t>(ne), Rational(0));
    }

    ScenarioBuilder& functioning(const std::string& id, Vector values, Vector r, Vector v, bool reachable = true)
    {
        s_.functionings.push_back({id, std::move(values), !reachable});
        std::get<ValuationTable>(s_.r.form).rows[id] = std::move(r);
        std::get<ValuationTable>(s_.v.form).rows[id] = std::move(v);
        if (reachable) {
            s_.utilization.push_back({"p_" + id, "x", {}, id});
        }
        return *this;
    }

    ScenarioBuilder& u(int nu, const std::string& id, Vector image)
    {
        if (!s_.u) {
            s_.schemas.u = DimensionSchema{Space::U, {}};
            for (int i = 0; i < nu; ++i) {
                s_.schemas.u->dims.push_back({"u" + std::to_string(i), {}});
            }
            s_.u = ValuationMap{MapKind::u, ValuationTable{}};
        }
        std::get<ValuationTable>(s_.u->form).rows[id] = std::move(image);
        return *this;
    }

    ScenarioBuilder& theta(Vector t)
    {
        s_.theta = std::move(t);
        return *this;
    }

    Scenario build() const { return s_; }

private:
    Scenario s_;
};

/// Record whose delta removes the patterns of `removed` and enables `added`.
inline InteractionRecord toggle(const std::vector<std::string>& removed, const std::vector<std::string>& added)
{
    InteractionRecord rec;
    rec.id = "toggle";
    rec.actor_id = "actor";
    rec.target = "agent";
    for (const auto& id : removed) {
        rec.deltas.utilization_removed.push_back({"p_" + id, "x"});
    }
    for (const auto& id : added) {
        rec.deltas.utilization_added.push_back({"q_" + id, "x", {}, id});
    }
    return rec;
}

} // namespace capkit::testutil
