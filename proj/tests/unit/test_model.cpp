#include "capkit/errors.hpp"
#include "capkit/model.hpp"
#include "capkit/oracle.hpp"
#include "capkit/scenario_io.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <algorithm>

using namespace capkit;
using testutil::ScenarioBuilder;
using testutil::vec;

namespace {

Scenario load_fixture(const std::string& name)
{
    auto res = parse_document(testutil::read_text(std::string(CAPKIT_FIXTURES) + "/" + name));
    REQUIRE(res.ok());
    return res.document->scenario;
}

std::vector<std::string> ids(const FunctioningSet& s) { return s.ids(); }

} // namespace

TEST_CASE("dominates")
{
    CHECK(dominates(vec({1, 2}), vec({1, 1})));
    CHECK(dominates(vec({1, 1}), vec({1, 1})));
    CHECK_FALSE(dominates(vec({2, 0}), vec({1, 1})));
    CHECK_THROWS_AS(dominates(vec({1}), vec({1, 1})), SchemaError);
}

TEST_CASE("strictly_dominates")
{
    CHECK(strictly_dominates(vec({1, 2}), vec({1, 1})));
    CHECK_FALSE(strictly_dominates(vec({1, 1}), vec({1, 1})));
    CHECK(strictly_dominates(vec({3, 3}), vec({1, 1})));
    CHECK_THROWS_AS(strictly_dominates(vec({1, 2, 3}), vec({1, 1})), SchemaError);
}

TEST_CASE("theta_prefers")
{
    const auto theta = vec({1, 1});
    CHECK(theta_prefers(vec({2, 0}), vec({0, 0}), theta, Strictness::strict));
    CHECK_FALSE(theta_prefers(vec({2, 2}), vec({2, 2}), theta, Strictness::strict));
    CHECK_FALSE(theta_prefers(vec({0, 3}), vec({2, 0}), theta, Strictness::strict));
    CHECK(theta_prefers(vec({2, 2}), vec({2, 2}), theta, Strictness::weak));

    SUBCASE("crossing a threshold counts even without dominance")
    {
        CHECK(theta_prefers(vec({2, 0}), vec({0, 1}), vec({1, 2}), Strictness::strict));
        CHECK(theta_prefers(vec({2, 0}), vec({0, 1}), vec({1, 2}), Strictness::weak));
    }
    SUBCASE("length mismatch")
    {
        CHECK_THROWS_AS(theta_prefers(vec({1}), vec({1, 1}), theta, Strictness::weak), SchemaError);
    }
}

TEST_CASE("order laws on random vectors")
{
    testgen::Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<std::size_t>(g.uniform(1, 5));
        const auto a = g.vector(n, 2);
        const auto b = g.chance(0.5) ? g.below(a) : g.vector(n, 2);
        const auto c = g.chance(0.5) ? g.below(b) : g.vector(n, 2);
        const auto t = g.vector(n, 2);
        CHECK(dominates(a, a));
        CHECK_FALSE(strictly_dominates(a, a));
        if (dominates(a, b) && dominates(b, c)) {
            CHECK(dominates(a, c));
        }
        if (dominates(a, b) && dominates(b, a)) {
            CHECK(a == b);
        }
        if (strictly_dominates(a, b)) {
            CHECK(dominates(a, b));
            CHECK_FALSE(dominates(b, a));
        }
        CHECK_FALSE(theta_prefers(a, a, t, Strictness::strict));
        CHECK(theta_prefers(a, a, t, Strictness::weak));
        if (theta_prefers(a, b, t, Strictness::strict)) {
            CHECK(theta_prefers(a, b, t, Strictness::weak));
        }
        if (theta_prefers(a, b, t, Strictness::strict) && theta_prefers(b, c, t, Strictness::strict)) {
            CHECK(theta_prefers(a, c, t, Strictness::strict));
        }
    }
}

TEST_CASE("FunctioningSet deduplicates by value and keeps every id")
{
    FunctioningSet s;
    s.insert(FunctioningVector{"b", vec({1, 0}), false});
    s.insert(FunctioningVector{"a", vec({1, 0}), false});
    s.insert(FunctioningVector{"c", vec({0, 1}), false});
    REQUIRE(s.size() == 2);
    CHECK(s.contains(vec({1, 0})));
    CHECK_FALSE(s.contains(vec({1, 1})));
    CHECK(s.contains_id("a"));
    CHECK(s.contains_id("b"));
    CHECK(ids(s) == std::vector<std::string>{"a", "b", "c"});

    FunctioningSet t;
    t.insert(FunctioningVector{"c", vec({0, 1}), false});
    CHECK(t.is_subset_of(s));
    CHECK_FALSE(s.is_subset_of(t));
}

TEST_CASE("compute_freedom honours guards and resources")
{
    auto s = ScenarioBuilder(1, 1, 1).functioning("a", vec({1}), vec({1}), vec({1})).build();
    s.characteristics.values["skill"] = Rational(2);
    s.utilization[0].guards.push_back({ContextKind::characteristics, "skill", Rational(1)});
    CHECK(ids(compute_freedom(s)) == std::vector<std::string>{"a"});

    SUBCASE("guard above the context value excludes the pattern")
    {
        s.utilization[0].guards[0].min = Rational(3);
        CHECK(compute_freedom(s).empty());
    }
    SUBCASE("missing resource excludes the pattern")
    {
        s.resources.clear();
        CHECK(compute_freedom(s).empty());
    }
}

TEST_CASE("compute_real_freedom")
{
    auto s = ScenarioBuilder(1, 2, 1)
                 .functioning("a", vec({0}), vec({1, 0}), vec({0}))
                 .functioning("b", vec({1}), vec({2, 1}), vec({1}))
                 .build();
    SUBCASE("all-zero theta keeps everything")
    {
        CHECK(compute_real_freedom(s) == compute_freedom(s));
    }
    SUBCASE("theta above every image empties the set")
    {
        s.theta = vec({3, 0});
        CHECK(compute_real_freedom(s).empty());
    }
    SUBCASE("theta filters componentwise")
    {
        s.theta = vec({1, 1});
        CHECK(ids(compute_real_freedom(s)) == std::vector<std::string>{"b"});
    }
}

TEST_CASE("grocery fixture sets")
{
    const auto s = load_fixture("grocery.scn");
    const auto q = compute_freedom(s);
    CHECK(q.size() == 3);
    CHECK(ids(q) == std::vector<std::string>{"b_simple_cook", "b_snack", "b_takeout"});
    CHECK(ids(compute_real_freedom(s)) == std::vector<std::string>{"b_simple_cook", "b_takeout"});
    CHECK(ids(maximal_set(q, s.v)) == std::vector<std::string>{"b_simple_cook", "b_takeout"});
}

TEST_CASE("maximal_set")
{
    SUBCASE("chain keeps the top")
    {
        const auto s = ScenarioBuilder(1, 1, 2)
                           .functioning("lo", vec({0}), vec({0}), vec({1, 1}))
                           .functioning("hi", vec({1}), vec({0}), vec({2, 2}))
                           .build();
        CHECK(ids(maximal_set(compute_freedom(s), s.v)) == std::vector<std::string>{"hi"});
    }
    SUBCASE("antichain keeps both")
    {
        const auto s = ScenarioBuilder(1, 1, 2)
                           .functioning("a", vec({0}), vec({0}), vec({0, 3}))
                           .functioning("b", vec({1}), vec({0}), vec({3, 0}))
                           .build();
        CHECK(maximal_set(compute_freedom(s), s.v).size() == 2);
    }
    SUBCASE("equal images are both maximal")
    {
        const auto s = ScenarioBuilder(1, 1, 1)
                           .functioning("a", vec({0}), vec({0}), vec({1}))
                           .functioning("b", vec({1}), vec({0}), vec({1}))
                           .build();
        CHECK(maximal_set(compute_freedom(s), s.v).size() == 2);
    }
    SUBCASE("empty set")
    {
        CHECK(maximal_set(FunctioningSet{}, ValuationMap{}).empty());
    }
    SUBCASE("missing table row")
    {
        FunctioningSet q;
        q.insert(FunctioningVector{"ghost", vec({1}), false});
        ValuationMap w{MapKind::v, ValuationTable{}};
        CHECK_THROWS_AS(maximal_set(q, w), ValuationError);
    }
}

TEST_CASE("maximal_indices matches a pairwise scan on random 4-dimensional images")
{
    testgen::Gen g(5);
    for (int round = 0; round < 50; ++round) {
        std::vector<Vector> images;
        for (int i = 0; i < 100; ++i) {
            images.push_back(g.vector(4, 3));
        }
        std::vector<std::size_t> expected;
        for (std::size_t i = 0; i < images.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < images.size() && !dominated; ++j) {
                dominated = strictly_dominates(images[j], images[i]);
            }
            if (!dominated) {
                expected.push_back(i);
            }
        }
        CHECK(maximal_indices(images) == expected);
    }
}

TEST_CASE("maximal_set properties on random scenarios")
{
    testgen::Gen g(21);
    for (int i = 0; i < 200; ++i) {
        const auto s = g.scenario();
        const auto q = compute_freedom(s);
        const auto m = maximal_set(q, s.v);
        CHECK(m.is_subset_of(q));
        CHECK(maximal_set(m, s.v) == m);
        CHECK(m == oracle::naive_maximal_set(q, s.v));
        CHECK(compute_real_freedom(s).is_subset_of(q));
        if (!q.empty()) {
            CHECK_FALSE(m.empty());
        }
    }
}

TEST_CASE("linear maps")
{
    const auto s = load_fixture("disaster.scn");
    Alternative relief{vec({1, 1, 1}), {"b_relief_center"}};
    CHECK(apply_map(s.r, relief) == vec({2, 1}));

    ValuationMap bad{MapKind::r, LinearMap{{vec({1, 1})}}};
    CHECK_THROWS_AS(apply_map(bad, relief), SchemaError);
}

TEST_CASE("access_profile")
{
    SUBCASE("empty freedom set")
    {
        auto s = ScenarioBuilder(1, 2, 1).functioning("a", vec({0}), vec({1, 1}), vec({0}), false).build();
        const auto p = access_profile(s);
        CHECK(p.no_functioning);
        CHECK_FALSE(p.jointly_satisfied);
        REQUIRE(p.dims.size() == 2);
        CHECK_FALSE(p.dims[0].max.has_value());
        CHECK_FALSE(p.dims[1].max.has_value());
    }
    SUBCASE("singleton below one threshold")
    {
        auto s = ScenarioBuilder(1, 2, 1).functioning("a", vec({0}), vec({2, 0}), vec({0})).theta(vec({1, 1})).build();
        const auto p = access_profile(s);
        CHECK(*p.dims[0].max == Rational(2));
        CHECK(*p.dims[1].max == Rational(0));
        CHECK(p.dims[0].meets_threshold);
        CHECK_FALSE(p.dims[1].meets_threshold);
        CHECK_FALSE(p.jointly_satisfied);
    }
    SUBCASE("disaster fixture profile table")
    {
        // r-images over Q: camp (0,1), shelter_water (1,1), clinic (2,0).
        const auto p = access_profile(load_fixture("disaster.scn"));
        REQUIRE(p.dims.size() == 2);
        CHECK(p.dims[0].name == "bodily_health");
        CHECK(*p.dims[0].max == Rational(2));
        CHECK(p.dims[1].name == "safety");
        CHECK(*p.dims[1].max == Rational(1));
        CHECK(p.dims[0].meets_threshold);
        CHECK(p.dims[1].meets_threshold);
        CHECK(p.jointly_satisfied);
    }
}

TEST_CASE("validate_scenario")
{
    const auto good = ScenarioBuilder(2, 1, 1)
                          .functioning("a", vec({0, 1}), vec({1}), vec({1}))
                          .functioning("b", vec({1, 0}), vec({1}), vec({2}))
                          .build();
    CHECK_FALSE(has_errors(validate_scenario(good)));

    auto first_error = [](const Diagnostics& d) {
        auto it = std::find_if(d.begin(), d.end(), [](const Diagnostic& x) { return x.severity == Severity::error; });
        REQUIRE(it != d.end());
        return *it;
    };

    SUBCASE("non-total table names the id")
    {
        auto s = good;
        std::get<ValuationTable>(s.v.form).rows.erase("b");
        const auto e = first_error(validate_scenario(s));
        CHECK(e.path == "/scenario/maps/v/table");
        CHECK(e.message.find("'b'") != std::string::npos);
    }
    SUBCASE("duplicate id")
    {
        auto s = good;
        s.functionings[1].id = "a";
        CHECK(has_errors(validate_scenario(s)));
    }
    SUBCASE("vector length")
    {
        auto s = good;
        s.functionings[0].values.push_back(Rational(1));
        CHECK(first_error(validate_scenario(s)).path == "/scenario/functionings/0/values");
    }
    SUBCASE("dangling utilization reference")
    {
        auto s = good;
        s.utilization[0].resource_id = "nowhere";
        CHECK(has_errors(validate_scenario(s)));
    }
    SUBCASE("equal values with different images")
    {
        auto s = good;
        s.functionings[1].values = s.functionings[0].values;
        CHECK(has_errors(validate_scenario(s)));
    }
    SUBCASE("u map without a U schema")
    {
        auto s = good;
        s.u = s.v;
        s.u->kind = MapKind::u;
        CHECK(has_errors(validate_scenario(s)));
    }
    SUBCASE("unreachable functioning without the flag is only a warning")
    {
        auto s = good;
        s.utilization.pop_back();
        const auto d = validate_scenario(s);
        CHECK_FALSE(has_errors(d));
        CHECK_FALSE(d.empty());
    }
}
