#include "capkit/rational.hpp"

#include "capkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace capkit {

namespace {

using wide = __int128;

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();

wide wide_abs(wide v) { return v < 0 ? -v : v; }

wide wide_gcd(wide a, wide b)
{
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Accumulates decimal digits into a 128-bit value; digits must already be validated.
wide parse_digits(std::string_view digits, std::string_view whole)
{
    wide v = 0;
    for (char c : digits) {
        v = v * 10 + (c - '0');
        if (v > kMax) {
            throw ArithmeticError("rational literal '" + std::string(whole) + "' is out of range");
        }
    }
    return v;
}

} // namespace

Rational::Rational(std::int64_t value)
{
    if (value == std::numeric_limits<std::int64_t>::min()) {
        throw ArithmeticError("rational out of range");
    }
    num_ = value;
}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw ArithmeticError("rational with zero denominator");
    }
    *this = from_wide(num, den);
}

Rational Rational::from_wide(wide num, wide den)
{
    if (den == 0) {
        throw ArithmeticError("division by zero");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (wide_abs(num) > kMax || den > kMax) {
        throw ArithmeticError("rational arithmetic overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(std::string_view text)
{
    const std::string quoted = "'" + std::string(text) + "'";
    if (text.empty()) {
        throw ArithmeticError("empty rational literal");
    }
    const std::string low = lower(text);
    for (std::string_view bad : {"nan", "inf", "infinity", "+inf", "-inf", "+infinity", "-infinity", "-nan", "+nan"}) {
        if (low == bad) {
            throw ArithmeticError("non-finite literal " + quoted + " is not allowed");
        }
    }

    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    wide num = 0;
    wide den = 1;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view p = body.substr(0, slash);
        std::string_view q = body.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) {
            throw ArithmeticError("malformed rational literal " + quoted);
        }
        num = parse_digits(p, text);
        den = parse_digits(q, text);
        if (den == 0) {
            throw ArithmeticError("rational literal " + quoted + " has zero denominator");
        }
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view ip = body.substr(0, dot);
        std::string_view fp = body.substr(dot + 1);
        if (!all_digits(ip) || !all_digits(fp)) {
            throw ArithmeticError("malformed decimal literal " + quoted);
        }
        if (fp.size() > 18) {
            throw ArithmeticError("decimal literal " + quoted + " has too many fractional digits");
        }
        std::string joined = std::string(ip) + std::string(fp);
        num = parse_digits(joined, text);
        for (std::size_t i = 0; i < fp.size(); ++i) {
            den *= 10;
        }
    } else {
        if (!all_digits(body)) {
            throw ArithmeticError("malformed rational literal " + quoted);
        }
        num = parse_digits(body, text);
    }
    return from_wide(negative ? -num : num, den);
}

std::string Rational::to_string() const
{
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept
{
    const wide lhs = static_cast<wide>(a.num_) * b.den_;
    const wide rhs = static_cast<wide>(b.num_) * a.den_;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b)
{
    if (a.den_ == 1 && b.den_ == 1) {
        return Rational::from_wide(static_cast<wide>(a.num_) + b.num_, 1);
    }
    return Rational::from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                               static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) {
        throw ArithmeticError("division by zero");
    }
    return Rational::from_wide(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
}

Rational Rational::operator-() const
{
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace capkit
