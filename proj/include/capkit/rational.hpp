#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace capkit {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Values are always kept in lowest terms with a positive denominator, so
/// structural equality is value equality. Arithmetic is checked: any result
/// that does not fit throws ArithmeticError instead of wrapping. Comparisons
/// widen to 128 bits and never overflow.
class Rational {
public:
    constexpr Rational() noexcept = default;
    Rational(std::int64_t value); // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    /// Parses `n`, `-n`, `n/d`, or a finite decimal such as `-1.25`.
    /// Throws ArithmeticError on anything else, including `d == 0` and
    /// non-finite spellings (`nan`, `inf`).
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Canonical text: `n` for integers, otherwise `n/d` in lowest terms.
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace capkit
