#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "../errors.hpp"
#include "../model.hpp"
#include "../rational.hpp"
#include "coset_tree.hpp"

// BS(1,n) = <a, t | t a t^-1 = a^n> as affine maps x -> n^k x + b of the line,
// b in Z[1/n]. (k, b)(k', b') = (k + k', n^k b' + b); a = (0, 1), t = (1, 0).

namespace horoprod::groups {

struct BSElement {
    int n = 2;
    std::int64_t k = 0;
    std::int64_t num = 0;  // b = num / n^e
    std::int64_t e = 0;    // e >= 0, and n does not divide num unless e = 0

    BSElement() = default;
    BSElement(int base, std::int64_t tk, std::int64_t numerator, std::int64_t exponent = 0) : n(base), k(tk), num(numerator), e(exponent) {
        if (n < 2) throw ParameterError("BS(1,n) needs n >= 2");
        reduce();
    }

    static BSElement identity(int n) { return BSElement(n, 0, 0); }
    static BSElement a(int n) { return BSElement(n, 0, 1); }
    static BSElement t(int n) { return BSElement(n, 1, 0); }

    /// b as an exact rational.
    Rational b() const { return Rational(num) / Rational::pow(Rational(n), static_cast<int>(e)); }

    static BSElement from_rational(int n, std::int64_t k, const Rational& b) {
        // the denominator must divide some power of n
        const i128 den = b.den();
        std::int64_t e = 0;
        i128 scale = 1;
        while (scale % den != 0) {
            if (++e > 80) throw ParameterError("BS(1,n) translation must lie in Z[1/n]");
            scale = detail::checked_mul(scale, n);
        }
        const i128 numer = detail::checked_mul(b.num(), scale / den);
        if (numer > INT64_MAX || numer < INT64_MIN) throw ResourceError("BS(1,n) numerator overflow");
        return BSElement(n, k, static_cast<std::int64_t>(numer), e);
    }

    double apply(double x) const { return std::pow(static_cast<double>(n), static_cast<double>(k)) * x + b().to_double(); }

    friend bool operator==(const BSElement&, const BSElement&) = default;
    friend auto operator<=>(const BSElement&, const BSElement&) = default;

private:
    void reduce() {
        if (e < 0) {
            *this = from_rational(n, k, Rational(num) * Rational::pow(Rational(n), static_cast<int>(-e)));
            return;
        }
        while (e > 0 && num % n == 0) {
            num /= n;
            --e;
        }
        if (num == 0) e = 0;
    }
};

inline void require_same_n(const BSElement& a, const BSElement& b) {
    if (a.n != b.n) throw ParameterError("BS(1,n) elements with different n");
}

inline BSElement multiply(const BSElement& g, const BSElement& h) {
    require_same_n(g, h);
    const Rational b = Rational::pow(Rational(g.n), static_cast<int>(g.k)) * h.b() + g.b();
    return BSElement::from_rational(g.n, g.k + h.k, b);
}

inline BSElement inverse(const BSElement& g) {
    // x = n^-k (y - b)
    const Rational b = -(Rational::pow(Rational(g.n), static_cast<int>(-g.k)) * g.b());
    return BSElement::from_rational(g.n, -g.k, b);
}

inline std::int64_t height_change(const BSElement& g) noexcept { return g.k; }

/// Edge length a BS(1,n)-equivariant tree needs next to H²_a.
inline double bs_edge_length(int n, double a) { return static_cast<double>(n) == a ? 1.0 : std::log(n) / std::log(a); }

inline void require_bs_model(int n, const Model& model) {
    if (!model.x.is_heintze() || !model.y.is_tree() || model.y.branching != n)
        throw ParameterError("act_bs: model must be H²_a ⋈ T_n with the element's n");
    if (std::fabs(model.y.edge_length - bs_edge_length(n, model.x.base)) > 1e-12)
        throw ParameterError("act_bs: tree edge length must be ln n / ln a");
}

/// Tree coordinate of the action: the coset c + n^{-h} Z goes to n^k c + b.
inline TreePoint bs_act_tree(const BSElement& g, const TreePoint& v) {
    const CosetTree tree(IntMat::scalar(g.n));
    return TreePoint(tree.act(g.k, {g.b()}, v.vertex), v.offset);
}

inline HoroPoint act_bs(const BSElement& g, const Model& model, const HoroPoint& p) {
    require_bs_model(g.n, model);
    check_horo_point(model, p);
    const auto& x = std::get<HPoint>(p.x);
    const double scale = std::pow(static_cast<double>(g.n), static_cast<double>(g.k));
    const double dh = static_cast<double>(g.k) * (static_cast<double>(g.n) == x.base() ? 1.0 : std::log(g.n) / x.log_base());
    HPoint nx = HPoint::at_height(scale * x.x() + g.b().to_double(), x.height() + dh, x.base());
    return HoroPoint{nx, bs_act_tree(g, std::get<TreePoint>(p.y))};
}

/// The element (h, -n^h c) sending the edge (v, parent v) to the base edge
/// (root, parent root); v at height h is the coset c + n^{-h} Z.
inline BSElement bs_base_edge_element(const TreeVertex& v) {
    const CosetTree tree(IntMat::scalar(v.m));
    const Rational c = tree.value(v)[0];
    return BSElement::from_rational(v.m, v.h, -(Rational::pow(Rational(v.m), static_cast<int>(v.h)) * c));
}

inline std::string to_string(const BSElement& g) {
    return "bs(n=" + std::to_string(g.n) + ", k=" + std::to_string(g.k) + ", b=" + g.b().str() + ")";
}

}  // namespace horoprod::groups
