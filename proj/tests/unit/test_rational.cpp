#include "capkit/errors.hpp"
#include "capkit/rational.hpp"

#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>

using capkit::ArithmeticError;
using capkit::Rational;

TEST_CASE("construction normalizes to lowest terms with a positive denominator")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6).num() == -1);
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(0, -5) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), ArithmeticError);
}

TEST_CASE("parse accepts integers, fractions and finite decimals")
{
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("2/4") == Rational(1, 2));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
    CHECK(Rational::parse("10.0") == Rational(10));
}

TEST_CASE("parse rejects zero denominators, non-finite spellings and junk")
{
    for (const char* bad : {"1/0", "0/0", "nan", "NaN", "inf", "-inf", "Infinity", "", "1/", "/2", "1.2.3", "1e5",
                            "one", " 1", "1 ", "+", "-", "1/-2", "0x10", "99999999999999999999"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rational::parse(bad), ArithmeticError);
    }
}

TEST_CASE("to_string is canonical")
{
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK(Rational(-6, 4).to_string() == "-3/2");
    CHECK(Rational(0).to_string() == "0");
    CHECK(Rational::parse(Rational(-17, 5).to_string()) == Rational(-17, 5));
}

TEST_CASE("ordering is exact")
{
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 6) == Rational(1, 3));
    // Cross-multiplication would overflow 64 bits here.
    const auto big = std::numeric_limits<std::int64_t>::max();
    CHECK(Rational(big - 1, big) < Rational(big, big - 1));
    CHECK(Rational(big, 3) > Rational(big - 1, 3));
}

TEST_CASE("arithmetic")
{
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(-Rational(2, 3) == Rational(-2, 3));
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArithmeticError);
}

TEST_CASE("overflow is reported, never wrapped")
{
    const auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(Rational(big) + Rational(1), ArithmeticError);
    CHECK_THROWS_AS(Rational(big) * Rational(2), ArithmeticError);
    CHECK_THROWS_AS(Rational(1, big) * Rational(1, big - 1), ArithmeticError);
    // Results that reduce back into range are fine.
    CHECK(Rational(big, 2) * Rational(2, big) == Rational(1));
}

TEST_CASE("field identities hold on random values")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-500, 500);
    std::uniform_int_distribution<int> den(1, 60);
    for (int i = 0; i < 2000; ++i) {
        const Rational a(num(rng), den(rng));
        const Rational b(num(rng), den(rng));
        const Rational c(num(rng), den(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (b != Rational(0)) {
            CHECK((a / b) * b == a);
        }
        CHECK(Rational::parse(a.to_string()) == a);
        CHECK(((a < b) || (b < a) || (a == b)));
    }
}
