#include "monty/rational.hpp"

#include "monty/error.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <ostream>

namespace monty {

namespace {

using Wide = __int128;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

[[noreturn]] void overflow() {
    throw Error(ErrorCode::Overflow, "rational arithmetic overflowed 64-bit range");
}

} // namespace

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
    if (den == 0) {
        throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (wide_abs(num) > kMax || den > kMax) {
        overflow();
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

// Operands are at most 2^63 in magnitude, so every product below fits in 127 bits.
Rational operator+(const Rational& a, const Rational& b) {
    Wide g = wide_gcd(a.den_, b.den_);
    Wide den = static_cast<Wide>(a.den_) / g * b.den_;
    Wide num = static_cast<Wide>(a.num_) * (b.den_ / g) + static_cast<Wide>(b.num_) * (a.den_ / g);
    return Rational::from_wide(num, den);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<Wide>(a.num_) * b.num_,
                               static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) {
        throw Error(ErrorCode::InvalidArgument, "rational division by zero");
    }
    return Rational::from_wide(static_cast<Wide>(a.num_) * b.den_,
                               static_cast<Wide>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<Wide>(num_), den_);
}

Rational Rational::reciprocal() const { return Rational(1) / *this; }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::Parse, "cannot parse '" + std::string(text) + "' as a rational");
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) overflow();
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) bad(whole);
    return v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exponent = parse_int(s.substr(e + 1), whole);
        s = s.substr(0, e);
    }
    Wide mantissa = 0;
    std::int64_t frac_digits = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_point) bad(whole);
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') bad(whole);
        seen_digit = true;
        mantissa = mantissa * 10 + (c - '0');
        if (mantissa > kMax) overflow();
        if (seen_point) ++frac_digits;
    }
    if (!seen_digit) bad(whole);
    std::int64_t scale = exponent - frac_digits;
    if (scale > 18 || scale < -18) overflow();
    Wide pow10 = 1;
    for (std::int64_t i = 0; i < (scale < 0 ? -scale : scale); ++i) pow10 *= 10;
    if (negative) mantissa = -mantissa;
    if (scale >= 0) return Rational(static_cast<std::int64_t>(mantissa)) * Rational(static_cast<std::int64_t>(pow10));
    return Rational(static_cast<std::int64_t>(mantissa), static_cast<std::int64_t>(pow10));
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) bad(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t n = parse_int(trim(s.substr(0, slash)), text);
        std::int64_t d = parse_int(trim(s.substr(slash + 1)), text);
        if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        return Rational(n, d);
    }
    if (s.find_first_of(".eE") == std::string_view::npos) {
        return Rational(parse_int(s, text));
    }
    return parse_decimal(s, text);
}

bool draw_below(double draw, const Rational& q) {
    if (q.num() <= 0) return false;
    if (q.num() >= q.den()) return true;
    // Walk the binary digits of both numbers until they differ. The double has
    // a finite expansion, so this terminates.
    std::uint64_t rem = static_cast<std::uint64_t>(q.num());
    const std::uint64_t den = static_cast<std::uint64_t>(q.den());
    while (draw != 0.0) {
        draw *= 2.0;
        bool draw_bit = draw >= 1.0;
        if (draw_bit) draw -= 1.0;
        rem *= 2; // rem < den < 2^63
        bool q_bit = rem >= den;
        if (q_bit) rem -= den;
        if (draw_bit != q_bit) return q_bit;
    }
    return rem != 0;
}

} // namespace monty
