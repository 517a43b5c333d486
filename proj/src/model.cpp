#include "capkit/model.hpp"

#include "capkit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace capkit {

std::string Diagnostic::to_string() const
{
    std::ostringstream os;
    os << (severity == Severity::error ? "error" : "warning");
    if (line) {
        os << " at line " << *line;
        if (column) {
            os << ", column " << *column;
        }
    }
    os << " [" << (path.empty() ? "/" : path) << "]: " << message;
    return os.str();
}

bool has_errors(const Diagnostics& diags)
{
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string_view to_string(Space s)
{
    switch (s) {
    case Space::B: return "B";
    case Space::E: return "E";
    case Space::P: return "P";
    case Space::U: return "U";
    }
    return "?";
}

std::string_view to_string(ContextKind k)
{
    return k == ContextKind::characteristics ? "characteristics" : "social";
}

std::string_view to_string(MapKind k)
{
    switch (k) {
    case MapKind::v: return "v";
    case MapKind::r: return "r";
    case MapKind::u: return "u";
    }
    return "?";
}

std::optional<std::size_t> DimensionSchema::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::string format_vector(std::span<const Rational> v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += v[i].to_string();
    }
    out += ")";
    return out;
}

const FunctioningVector* Scenario::find_functioning(std::string_view id) const
{
    auto it = std::find_if(functionings.begin(), functionings.end(), [&](const auto& f) { return f.id == id; });
    return it == functionings.end() ? nullptr : &*it;
}

const ResourceVector* Scenario::find_resource(std::string_view id) const
{
    auto it = std::find_if(resources.begin(), resources.end(), [&](const auto& x) { return x.id == id; });
    return it == resources.end() ? nullptr : &*it;
}

// -- FunctioningSet -------------------------------------------------------------

void FunctioningSet::insert(const FunctioningVector& f) { insert(Alternative{f.values, {f.id}}); }

void FunctioningSet::insert(const Alternative& a)
{
    auto it = std::lower_bound(items_.begin(), items_.end(), a.values,
                               [](const Alternative& x, const Vector& v) { return x.values < v; });
    if (it != items_.end() && it->values == a.values) {
        for (const auto& id : a.ids) {
            auto pos = std::lower_bound(it->ids.begin(), it->ids.end(), id);
            if (pos == it->ids.end() || *pos != id) {
                it->ids.insert(pos, id);
            }
        }
        return;
    }
    Alternative copy = a;
    std::sort(copy.ids.begin(), copy.ids.end());
    copy.ids.erase(std::unique(copy.ids.begin(), copy.ids.end()), copy.ids.end());
    items_.insert(it, std::move(copy));
}

bool FunctioningSet::contains(std::span<const Rational> values) const
{
    auto it = std::lower_bound(items_.begin(), items_.end(), values, [](const Alternative& x, std::span<const Rational> v) {
        return std::lexicographical_compare(x.values.begin(), x.values.end(), v.begin(), v.end());
    });
    return it != items_.end() && std::equal(it->values.begin(), it->values.end(), values.begin(), values.end());
}

bool FunctioningSet::contains_id(std::string_view id) const
{
    return std::any_of(items_.begin(), items_.end(), [&](const Alternative& a) {
        return std::find(a.ids.begin(), a.ids.end(), id) != a.ids.end();
    });
}

bool FunctioningSet::is_subset_of(const FunctioningSet& other) const
{
    return std::all_of(items_.begin(), items_.end(), [&](const Alternative& a) { return other.contains(a.values); });
}

bool FunctioningSet::same_values(const FunctioningSet& other) const
{
    return size() == other.size() && is_subset_of(other);
}

std::vector<std::string> FunctioningSet::ids() const
{
    std::vector<std::string> out;
    for (const auto& a : items_) {
        out.insert(out.end(), a.ids.begin(), a.ids.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// -- dominance --------------------------------------------------------------------

namespace {

void require_same_length(std::span<const Rational> a, std::span<const Rational> b, const char* what)
{
    if (a.size() != b.size()) {
        throw SchemaError(std::string(what) + ": vector lengths differ (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
}

// Components at or above their threshold.
std::vector<bool> satisfied(std::span<const Rational> x, std::span<const Rational> theta)
{
    std::vector<bool> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out[k] = x[k] >= theta[k];
    }
    return out;
}

} // namespace

bool dominates(std::span<const Rational> a, std::span<const Rational> b)
{
    require_same_length(a, b, "dominates");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
            return false;
        }
    }
    return true;
}

bool strictly_dominates(std::span<const Rational> a, std::span<const Rational> b)
{
    require_same_length(a, b, "strictly_dominates");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
            return false;
        }
        strict = strict || a[i] > b[i];
    }
    return strict;
}

bool theta_prefers(std::span<const Rational> a, std::span<const Rational> b, std::span<const Rational> theta,
                   Strictness strictness)
{
    require_same_length(a, b, "theta_prefers");
    require_same_length(a, theta, "theta_prefers");
    const auto sat_a = satisfied(a, theta);
    const auto sat_b = satisfied(b, theta);
    bool superset = true;
    bool proper = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (sat_b[k] && !sat_a[k]) {
            superset = false;
        }
        if (sat_a[k] && !sat_b[k]) {
            proper = true;
        }
    }
    if (superset && proper) {
        return true;
    }
    return strictness == Strictness::strict ? strictly_dominates(a, b) : dominates(a, b);
}

// -- valuation --------------------------------------------------------------------

Vector apply_map(const ValuationMap& w, const Alternative& a)
{
    if (const auto* table = std::get_if<ValuationTable>(&w.form)) {
        const Vector* row = nullptr;
        for (const auto& id : a.ids) {
            auto it = table->rows.find(id);
            if (it == table->rows.end()) {
                throw ValuationError("valuation '" + std::string(to_string(w.kind)) +
                                     "' is not total: no row for functioning '" + id + "'");
            }
            if (row != nullptr && *row != it->second) {
                throw ValuationError("valuation '" + std::string(to_string(w.kind)) +
                                     "' assigns different images to equal functionings '" + a.id() + "' and '" + id +
                                     "'");
            }
            row = &it->second;
        }
        return *row;
    }
    const auto& matrix = std::get<LinearMap>(w.form).matrix;
    Vector out;
    out.reserve(matrix.size());
    for (const auto& row : matrix) {
        if (row.size() != a.values.size()) {
            throw SchemaError("linear map '" + std::string(to_string(w.kind)) + "' has width " +
                              std::to_string(row.size()) + " but functioning '" + a.id() + "' has " +
                              std::to_string(a.values.size()) + " components");
        }
        Rational acc;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].num() != 0 && a.values[j].num() != 0) {
                acc += row[j] * a.values[j];
            }
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<Vector> apply_map(const ValuationMap& w, const FunctioningSet& s)
{
    std::vector<Vector> out;
    out.reserve(s.size());
    for (const auto& a : s) {
        out.push_back(apply_map(w, a));
    }
    return out;
}

// -- sets -------------------------------------------------------------------------

bool guards_hold(const Scenario& s, const UtilizationEntry& entry)
{
    for (const auto& g : entry.guards) {
        const auto& values = s.context(g.context).values;
        auto it = values.find(g.component);
        if (it == values.end() || it->second < g.min) {
            return false;
        }
    }
    return true;
}

FunctioningSet compute_freedom(const Scenario& s)
{
    FunctioningSet q;
    for (const auto& entry : s.utilization) {
        if (s.find_resource(entry.resource_id) == nullptr || !guards_hold(s, entry)) {
            continue;
        }
        if (const auto* f = s.find_functioning(entry.output)) {
            q.insert(*f);
        }
    }
    return q;
}

FunctioningSet compute_real_freedom(const Scenario& s)
{
    FunctioningSet out;
    for (const auto& a : compute_freedom(s)) {
        if (dominates(apply_map(s.r, a), s.theta)) {
            out.insert(a);
        }
    }
    return out;
}

std::vector<std::size_t> maximal_indices(std::span<const Vector> images)
{
    // Lexicographically larger images come first. A strict dominator is always
    // lexicographically larger, so each candidate only needs checking against
    // the maximal elements already accepted.
    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return images[x] > images[y]; });

    std::vector<std::size_t> window;
    for (std::size_t idx : order) {
        const auto& candidate = images[idx];
        bool dominated = false;
        for (std::size_t w : window) {
            if (strictly_dominates(images[w], candidate)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            window.push_back(idx);
        }
    }
    std::sort(window.begin(), window.end());
    return window;
}

FunctioningSet maximal_set(const FunctioningSet& q, const ValuationMap& w)
{
    const auto images = apply_map(w, q);
    FunctioningSet out;
    for (std::size_t idx : maximal_indices(images)) {
        out.insert(q.items()[idx]);
    }
    return out;
}

AccessProfile access_profile(const Scenario& s)
{
    const auto q = compute_freedom(s);
    const auto images = apply_map(s.r, q);
    AccessProfile profile;
    profile.no_functioning = q.empty();
    for (std::size_t k = 0; k < s.schemas.e.size(); ++k) {
        DimensionAccess d;
        d.name = s.schemas.e.dims[k].name;
        d.threshold = k < s.theta.size() ? s.theta[k] : Rational{};
        for (const auto& img : images) {
            if (!d.max || img.at(k) > *d.max) {
                d.max = img.at(k);
            }
        }
        d.meets_threshold = d.max && *d.max >= d.threshold;
        profile.dims.push_back(std::move(d));
    }
    profile.jointly_satisfied = std::any_of(images.begin(), images.end(),
                                            [&](const Vector& img) { return dominates(img, s.theta); });
    return profile;
}

// -- validation ---------------------------------------------------------------------

namespace {

class Validator {
public:
    Validator(const Scenario& s, std::string root) : s_(s), root_(std::move(root)) {}

    Diagnostics run()
    {
        schema(s_.schemas.b, "/schemas/B");
        schema(s_.schemas.e, "/schemas/E");
        schema(s_.schemas.p, "/schemas/P");
        if (s_.schemas.u) {
            schema(*s_.schemas.u, "/schemas/U");
            if (!s_.u) {
                error("/schemas/U", "U schema declared without a 'u' valuation map");
            }
        }
        if (s_.u && !s_.schemas.u) {
            error("/maps/u", "'u' valuation map requires a U schema");
        }
        dim_names(s_.schemas.resources, "/schemas/resources", true);
        resources();
        functionings();
        utilization();
        map(s_.v, s_.schemas.p.size(), "/maps/v");
        map(s_.r, s_.schemas.e.size(), "/maps/r");
        if (s_.u && s_.schemas.u) {
            map(*s_.u, s_.schemas.u->size(), "/maps/u");
        }
        length(s_.theta, s_.schemas.e.size(), "/theta");
        if (s_.p_threshold) {
            length(*s_.p_threshold, s_.schemas.p.size(), "/p_threshold");
        }
        return std::move(diags_);
    }

private:
    void error(const std::string& path, std::string msg) { diags_.push_back({Severity::error, root_ + path, std::move(msg), {}, {}}); }
    void warn(const std::string& path, std::string msg) { diags_.push_back({Severity::warning, root_ + path, std::move(msg), {}, {}}); }

    void dim_names(const std::vector<Dimension>& dims, const std::string& path, bool allow_empty)
    {
        if (dims.empty() && !allow_empty) {
            error(path, "schema has no dimensions");
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i].name.empty()) {
                error(path + "/" + std::to_string(i) + "/name", "dimension name is empty");
            }
            if (!seen.insert(dims[i].name).second) {
                error(path + "/" + std::to_string(i) + "/name", "duplicate dimension name '" + dims[i].name + "'");
            }
        }
    }

    void schema(const DimensionSchema& d, const std::string& path) { dim_names(d.dims, path, false); }

    void length(const Vector& v, std::size_t expected, const std::string& path)
    {
        if (v.size() != expected) {
            error(path, "expected " + std::to_string(expected) + " components, found " + std::to_string(v.size()));
        }
    }

    void resources()
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < s_.resources.size(); ++i) {
            const auto& x = s_.resources[i];
            const std::string path = "/resources/" + std::to_string(i);
            if (x.id.empty()) {
                error(path + "/id", "resource id is empty");
            }
            if (!seen.insert(x.id).second) {
                error(path + "/id", "duplicate resource id '" + x.id + "'");
            }
            length(x.values, s_.schemas.resources.size(), path + "/values");
        }
    }

    void functionings()
    {
        std::set<std::string> seen;
        std::set<std::string> produced;
        for (const auto& e : s_.utilization) {
            produced.insert(e.output);
        }
        for (std::size_t i = 0; i < s_.functionings.size(); ++i) {
            const auto& f = s_.functionings[i];
            const std::string path = "/functionings/" + std::to_string(i);
            if (f.id.empty()) {
                error(path + "/id", "functioning id is empty");
            }
            if (!seen.insert(f.id).second) {
                error(path + "/id", "duplicate functioning id '" + f.id + "'");
            }
            length(f.values, s_.schemas.b.size(), path + "/values");
            if (!f.unreachable && produced.count(f.id) == 0) {
                warn(path, "functioning '" + f.id + "' is not produced by any utilization entry (mark it 'unreachable' if intended)");
            }
        }
    }

    void utilization()
    {
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < s_.utilization.size(); ++i) {
            const auto& e = s_.utilization[i];
            const std::string path = "/utilization/" + std::to_string(i);
            if (e.pattern_id.empty()) {
                error(path + "/pattern", "pattern id is empty");
            }
            if (s_.find_resource(e.resource_id) == nullptr) {
                error(path + "/resource", "unknown resource '" + e.resource_id + "'");
            }
            if (s_.find_functioning(e.output) == nullptr) {
                error(path + "/output", "unknown functioning '" + e.output + "'");
            }
            if (!seen.emplace(e.pattern_id, e.resource_id).second) {
                error(path, "pattern '" + e.pattern_id + "' is applied to resource '" + e.resource_id + "' more than once");
            }
            for (std::size_t g = 0; g < e.guards.size(); ++g) {
                const auto& guard = e.guards[g];
                if (s_.context(guard.context).values.count(guard.component) == 0) {
                    error(path + "/guards/" + std::to_string(g) + "/component",
                          "unknown " + std::string(to_string(guard.context)) + " component '" + guard.component + "'");
                }
            }
        }
    }

    void map(const ValuationMap& w, std::size_t codomain, const std::string& path)
    {
        if (const auto* table = std::get_if<ValuationTable>(&w.form)) {
            for (const auto& f : s_.functionings) {
                if (table->rows.count(f.id) == 0) {
                    error(path + "/table", "table is not total: missing row for functioning '" + f.id + "'");
                }
            }
            for (const auto& [id, row] : table->rows) {
                if (s_.find_functioning(id) == nullptr) {
                    error(path + "/table/" + id, "row for unknown functioning '" + id + "'");
                }
                length(row, codomain, path + "/table/" + id);
            }
            // A valuation is a function of the functioning's value, so equal
            // vectors must share an image.
            for (std::size_t i = 0; i < s_.functionings.size(); ++i) {
                for (std::size_t j = i + 1; j < s_.functionings.size(); ++j) {
                    const auto& a = s_.functionings[i];
                    const auto& b = s_.functionings[j];
                    if (a.values != b.values) {
                        continue;
                    }
                    auto ra = table->rows.find(a.id);
                    auto rb = table->rows.find(b.id);
                    if (ra != table->rows.end() && rb != table->rows.end() && ra->second != rb->second) {
                        error(path + "/table/" + b.id, "functionings '" + a.id + "' and '" + b.id +
                                                           "' have equal values but different images");
                    }
                }
            }
        } else {
            const auto& matrix = std::get<LinearMap>(w.form).matrix;
            if (matrix.size() != codomain) {
                error(path + "/linear", "expected " + std::to_string(codomain) + " rows, found " + std::to_string(matrix.size()));
            }
            for (std::size_t i = 0; i < matrix.size(); ++i) {
                length(matrix[i], s_.schemas.b.size(), path + "/linear/" + std::to_string(i));
            }
        }
    }

    const Scenario& s_;
    std::string root_;
    Diagnostics diags_;
};

} // namespace

Diagnostics validate_scenario(const Scenario& s, const std::string& path) { return Validator(s, path).run(); }

} // namespace capkit
