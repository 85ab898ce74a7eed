#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "../errors.hpp"
#include "../model.hpp"
#include "coset_tree.hpp"

// Z^2 x|_A Z with (v, k)(v', k') = (v + A^k v', k + k'). The action on
// H²_{λ1} ⋈ H²_{1/λ2} goes through the left eigenvectors l1, l2 of A
// (l A = λ l), normalized to first entry 1: v acts on the two horizontal
// coordinates by adding l1.v and l2.v, and k scales them by λ1^k and λ2^k.

namespace horoprod::groups {

struct SolGroup {
    IntMat a;
    double lambda1 = 0.0;  // > 1
    double lambda2 = 0.0;  // = 1 / lambda1
    double l1[2] = {1.0, 0.0};
    double l2[2] = {1.0, 0.0};

    explicit SolGroup(IntMat m = IntMat::two_by_two(2, 1, 1, 1)) : a(m) {
        if (a.dim != 2) throw ParameterError("Sol needs a 2x2 matrix");
        if (a.det() != 1) throw ParameterError("Sol matrix must have det 1 (positive eigenvalues)");
        if (a.trace() <= 2) throw ParameterError("Sol matrix must have trace > 2");
        if (a.e[1][0] == 0) throw ParameterError("Sol matrix with A21 = 0 is not hyperbolic");
        const double tr = static_cast<double>(a.trace());
        const double disc = std::sqrt(tr * tr - 4.0);
        lambda1 = 0.5 * (tr + disc);
        lambda2 = 1.0 / lambda1;  // det 1; avoids the cancellation in tr - disc
        l1[1] = (lambda1 - static_cast<double>(a.e[0][0])) / static_cast<double>(a.e[1][0]);
        l2[1] = (lambda2 - static_cast<double>(a.e[0][0])) / static_cast<double>(a.e[1][0]);
    }

    Model model() const {
        return Model(Factor::heintze(lambda1), Factor::heintze(1.0 / lambda2),
                     "sol-A(" + std::to_string(a.e[0][0]) + "," + std::to_string(a.e[0][1]) + "," + std::to_string(a.e[1][0]) + "," +
                         std::to_string(a.e[1][1]) + ")");
    }

    friend bool operator==(const SolGroup& x, const SolGroup& y) { return x.a == y.a; }
};

struct SolElement {
    IntMat a = IntMat::two_by_two(2, 1, 1, 1);
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t k = 0;

    static SolElement identity(const IntMat& m) { return SolElement{m, 0, 0, 0}; }
    static SolElement t(const IntMat& m) { return SolElement{m, 0, 0, 1}; }
    static SolElement a1(const IntMat& m) { return SolElement{m, 1, 0, 0}; }
    static SolElement a2(const IntMat& m) { return SolElement{m, 0, 1, 0}; }

    friend bool operator==(const SolElement& x, const SolElement& y) {
        return x.a == y.a && x.p == y.p && x.q == y.q && x.k == y.k;
    }
};

namespace detail {

inline std::int64_t to_i64(const Rational& r) {
    if (!r.is_integer() || r.num() > INT64_MAX || r.num() < INT64_MIN) throw ResourceError("Sol coordinates left the int64 range");
    return static_cast<std::int64_t>(r.num());
}

}  // namespace detail

inline SolElement multiply(const SolElement& g, const SolElement& h) {
    if (!(g.a == h.a)) throw ParameterError("Sol elements from different matrices");
    // det A = 1, so A^k is integral for every k
    const RatVec w = mul_power(g.a, g.k, {Rational(h.p), Rational(h.q)});
    return SolElement{g.a, detail::to_i64(w[0] + Rational(g.p)), detail::to_i64(w[1] + Rational(g.q)), g.k + h.k};
}

inline SolElement inverse(const SolElement& g) {
    const RatVec w = mul_power(g.a, -g.k, {Rational(-g.p), Rational(-g.q)});
    return SolElement{g.a, detail::to_i64(w[0]), detail::to_i64(w[1]), -g.k};
}

inline std::int64_t height_change(const SolElement& g) noexcept { return g.k; }

inline HoroPoint act_sol(const SolGroup& group, const SolElement& g, const Model& model, const HoroPoint& pt) {
    if (!(g.a == group.a)) throw ParameterError("act_sol: element and group use different matrices");
    if (!model.x.is_heintze() || !model.y.is_heintze() || std::fabs(model.x.base - group.lambda1) > 1e-12 ||
        std::fabs(model.y.base - 1.0 / group.lambda2) > 1e-12)
        throw ParameterError("act_sol: model must be H²_{λ1} ⋈ H²_{1/λ2}");
    check_horo_point(model, pt);
    const auto& x = std::get<HPoint>(pt.x);
    const auto& y = std::get<HPoint>(pt.y);
    const double p = static_cast<double>(g.p);
    const double q = static_cast<double>(g.q);
    const double k = static_cast<double>(g.k);
    const double nx = std::pow(group.lambda1, k) * x.x() + group.l1[0] * p + group.l1[1] * q;
    const double ny = std::pow(group.lambda2, k) * y.x() + group.l2[0] * p + group.l2[1] * q;
    return HoroPoint{HPoint::at_height(nx, x.height() + k, x.base()), HPoint::at_height(ny, y.height() - k, y.base())};
}

inline std::string to_string(const SolElement& g) {
    return "sol(v=(" + std::to_string(g.p) + "," + std::to_string(g.q) + "), k=" + std::to_string(g.k) + ")";
}

}  // namespace horoprod::groups
