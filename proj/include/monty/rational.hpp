#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace monty {

// Exact rational in lowest terms with a positive denominator. Arithmetic is
// overflow-checked and throws Error(ErrorCode::Overflow) instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value); // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    bool is_zero() const noexcept { return num_ == 0; }

    // "a/b" or "a" for integers.
    std::string str() const;

    // Accepts "a/b", integers, and finite decimal literals ("0.125", ".5",
    // "1e-2"). Decimals become the exact rational of their digits.
    static Rational parse(std::string_view text);

    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// True iff draw < q, evaluated exactly on the binary expansion of the double.
// Requires 0 <= draw < 1 and 0 <= q <= 1.
bool draw_below(double draw, const Rational& q);

} // namespace monty
