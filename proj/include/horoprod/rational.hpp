#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

// Exact rationals over __int128 with overflow checks. Group elements of
// BS(1,n) and the HNN extension only ever need denominators that are powers
// of n (resp. det B), so this stays small at desk scale; an overflow throws
// rather than wrapping.

namespace horoprod {

using i128 = __int128;

namespace detail {

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("rational overflow (multiply)");
    return r;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("rational overflow (add)");
    return r;
}

inline i128 abs128(i128 a) { return a < 0 ? -a : a; }

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string to_string128(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    // careful with the most negative value: work on negative remainders
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

}  // namespace detail

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is convenient
    Rational(i128 n, i128 d) : num_(n), den_(d) {
        if (d == 0) throw ParameterError("rational with zero denominator");
        normalize();
    }

    i128 num() const noexcept { return num_; }
    i128 den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const i128 g = detail::gcd128(a.den_, b.den_);
        const i128 da = a.den_ / g;
        return Rational(detail::checked_add(detail::checked_mul(a.num_, b.den_ / g), detail::checked_mul(b.num_, da)),
                        detail::checked_mul(da, b.den_));
    }
    friend Rational operator-(const Rational& a) {
        Rational r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const i128 g1 = detail::gcd128(a.num_, b.den_);
        const i128 g2 = detail::gcd128(b.num_, a.den_);
        const i128 n1 = g1 ? a.num_ / g1 : a.num_;
        const i128 d2 = g1 ? b.den_ / g1 : b.den_;
        const i128 n2 = g2 ? b.num_ / g2 : b.num_;
        const i128 d1 = g2 ? a.den_ / g2 : a.den_;
        return Rational(detail::checked_mul(n1, n2), detail::checked_mul(d1, d2));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ParameterError("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const i128 l = detail::checked_mul(a.num_, b.den_);
        const i128 r = detail::checked_mul(b.num_, a.den_);
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Integer power, negative exponents allowed for non-zero values.
    static Rational pow(const Rational& base, int e) {
        Rational out(1);
        Rational b = e >= 0 ? base : Rational(1) / base;
        for (int k = e >= 0 ? e : -e; k > 0; k >>= 1) {
            if (k & 1) out = out * b;
            if (k > 1) b = b * b;
        }
        return out;
    }

    std::string str() const {
        return den_ == 1 ? detail::to_string128(num_) : detail::to_string128(num_) + "/" + detail::to_string128(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const i128 g = detail::gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    i128 num_ = 0;
    i128 den_ = 1;
};

}  // namespace horoprod
