#pragma once

#include "capkit/diagnostics.hpp"
#include "capkit/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace capkit {

/// Spaces a dimension schema can describe: functionings (B), access to
/// basic entitlements (E), life-plan valuation (P), mundane preference (U).
enum class Space { B, E, P, U };

std::string_view to_string(Space s);

struct Dimension {
    std::string name;
    std::string description;

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

struct DimensionSchema {
    Space space = Space::B;
    std::vector<Dimension> dims;

    std::size_t size() const noexcept { return dims.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const DimensionSchema&, const DimensionSchema&) = default;
};

using Vector = std::vector<Rational>;

std::string format_vector(std::span<const Rational> v);

struct FunctioningVector {
    std::string id;
    Vector values;
    bool unreachable = false; ///< declared as intentionally unreachable; silences the validator

    friend bool operator==(const FunctioningVector&, const FunctioningVector&) = default;
};

struct ResourceVector {
    std::string id;
    Vector values;

    friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
};

enum class ContextKind { characteristics, social };

std::string_view to_string(ContextKind k);

struct ContextVector {
    ContextKind kind = ContextKind::characteristics;
    std::map<std::string, Rational> values;

    friend bool operator==(const ContextVector&, const ContextVector&) = default;
};

/// Lower bound on one context component. A utilization entry applies only
/// when every one of its guards holds.
struct Guard {
    ContextKind context = ContextKind::characteristics;
    std::string component;
    Rational min;

    friend bool operator==(const Guard&, const Guard&) = default;
};

/// One pattern of use applied to one resource vector, producing a functioning.
struct UtilizationEntry {
    std::string pattern_id;
    std::string resource_id;
    std::vector<Guard> guards;
    std::string output;

    friend bool operator==(const UtilizationEntry&, const UtilizationEntry&) = default;
};

enum class MapKind { v, r, u };

std::string_view to_string(MapKind k);

/// Explicit functioning-id -> codomain vector rows.
struct ValuationTable {
    std::map<std::string, Vector> rows;

    friend bool operator==(const ValuationTable&, const ValuationTable&) = default;
};

/// codomain_dim x B_dim matrix applied to the functioning's values.
struct LinearMap {
    std::vector<Vector> matrix;

    friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

struct ValuationMap {
    MapKind kind = MapKind::v;
    std::variant<ValuationTable, LinearMap> form;

    friend bool operator==(const ValuationMap&, const ValuationMap&) = default;
};

struct Schemas {
    DimensionSchema b{Space::B, {}};
    DimensionSchema e{Space::E, {}};
    DimensionSchema p{Space::P, {}};
    std::optional<DimensionSchema> u;
    std::vector<Dimension> resources;

    friend bool operator==(const Schemas&, const Schemas&) = default;
};

/// One agent's complete choice situation.
struct Scenario {
    std::string agent_id;
    Schemas schemas;
    std::vector<ResourceVector> resources;
    ContextVector characteristics{ContextKind::characteristics, {}};
    ContextVector social{ContextKind::social, {}};
    std::vector<FunctioningVector> functionings;
    std::vector<UtilizationEntry> utilization;
    ValuationMap v{MapKind::v, {}};
    ValuationMap r{MapKind::r, {}};
    std::optional<ValuationMap> u;
    Vector theta;
    /// Optional thresholds on P used when comparing life plans.
    std::optional<Vector> p_threshold;

    /// The mundane preference, falling back to `v` when none is declared.
    const ValuationMap& u_or_v() const { return u ? *u : v; }
    const ContextVector& context(ContextKind k) const
    {
        return k == ContextKind::characteristics ? characteristics : social;
    }

    const FunctioningVector* find_functioning(std::string_view id) const;
    const ResourceVector* find_resource(std::string_view id) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// A distinct functioning value together with every catalog id carrying it.
struct Alternative {
    Vector values;
    std::vector<std::string> ids; ///< sorted, non-empty

    const std::string& id() const { return ids.front(); }

    friend bool operator==(const Alternative&, const Alternative&) = default;
};

/// Finite set of functionings, deduplicated by value and ordered by value.
class FunctioningSet {
public:
    FunctioningSet() = default;

    void insert(const FunctioningVector& f);
    void insert(const Alternative& a);

    const std::vector<Alternative>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    bool contains(std::span<const Rational> values) const;
    bool contains_id(std::string_view id) const;
    bool is_subset_of(const FunctioningSet& other) const;
    /// Equal as sets of vectors, ignoring which ids carry each value.
    bool same_values(const FunctioningSet& other) const;
    /// Every id of every member, sorted.
    std::vector<std::string> ids() const;

    friend bool operator==(const FunctioningSet& a, const FunctioningSet& b) { return a.items_ == b.items_; }

private:
    std::vector<Alternative> items_;
};

// -- dominance ----------------------------------------------------------------

/// Weak Pareto dominance: every component of `a` is >= the one in `b`.
bool dominates(std::span<const Rational> a, std::span<const Rational> b);

/// Strict Pareto dominance: `a` dominates `b` and they differ.
bool strictly_dominates(std::span<const Rational> a, std::span<const Rational> b);

enum class Strictness { weak, strict };

/// Threshold-sensitive preference. With sat(x) the set of components at or
/// above the threshold, the strict form holds when sat(a) is a proper
/// superset of sat(b) or `a` strictly dominates `b`; the weak form replaces
/// strict dominance with weak dominance.
bool theta_prefers(std::span<const Rational> a, std::span<const Rational> b, std::span<const Rational> theta,
                   Strictness strictness);

// -- valuation ----------------------------------------------------------------

/// Image of one alternative. Throws ValuationError when a table lacks the id
/// and SchemaError when a linear map's width does not match.
Vector apply_map(const ValuationMap& w, const Alternative& a);
std::vector<Vector> apply_map(const ValuationMap& w, const FunctioningSet& s);

// -- sets ---------------------------------------------------------------------

bool guards_hold(const Scenario& s, const UtilizationEntry& entry);

/// Every functioning produced by an applicable utilization entry.
FunctioningSet compute_freedom(const Scenario& s);

/// Members of the freedom set whose r-image weakly dominates theta.
FunctioningSet compute_real_freedom(const Scenario& s);

/// Indices of the Pareto-maximal images (sort-then-filter skyline). Result is
/// in ascending index order.
std::vector<std::size_t> maximal_indices(std::span<const Vector> images);

/// Members of `q` not strictly dominated under `w` by another member.
FunctioningSet maximal_set(const FunctioningSet& q, const ValuationMap& w);

struct DimensionAccess {
    std::string name;
    std::optional<Rational> max; ///< empty when the freedom set is empty
    Rational threshold;
    bool meets_threshold = false;

    friend bool operator==(const DimensionAccess&, const DimensionAccess&) = default;
};

/// Per-E-dimension best achievable access, plus whether one functioning meets
/// all thresholds at once.
struct AccessProfile {
    std::vector<DimensionAccess> dims;
    bool no_functioning = false;
    bool jointly_satisfied = false;

    friend bool operator==(const AccessProfile&, const AccessProfile&) = default;
};

AccessProfile access_profile(const Scenario& s);

// -- validation ---------------------------------------------------------------

/// Checks every structural invariant of a scenario. Paths in the returned
/// diagnostics are prefixed with `path`.
Diagnostics validate_scenario(const Scenario& s, const std::string& path = "/scenario");

} // namespace capkit
