#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "../errors.hpp"
#include "../model.hpp"
#include "coset_tree.hpp"

// Ascending HNN extension HNN(Z^2, B) = Z^2[B^-1] x| Z with
// (w, k)(w', k') = (w + B^k w', k + k'), t = (0, 1), a = (e1, 0), b = (e2, 0),
// so t h t^-1 = B h.
//
// It acts on H²_{λ1} ⋈ H²_{1/λ2}[|det B|]: the plane coordinates move like the
// Sol action (left eigenvectors of B), the sheet coordinate moves on the
// Bass-Serre tree by c -> B^k c + w.

namespace horoprod::groups {

struct HNNGroup {
    IntMat b;
    double lambda1 = 0.0;  // > 1
    double lambda2 = 0.0;  // in (0, 1)
    double l1[2] = {1.0, 0.0};
    double l2[2] = {1.0, 0.0};

    explicit HNNGroup(IntMat m = IntMat::two_by_two(3, 1, 1, 1)) : b(m) {
        if (b.dim != 2) throw ParameterError("HNN(Z^2, B) needs a 2x2 matrix");
        const double tr = static_cast<double>(b.trace());
        const double det = static_cast<double>(b.det());
        if (!(det >= 2.0)) throw ParameterError("HNN(Z^2, B) needs det B >= 2");
        const double disc2 = tr * tr - 4.0 * det;
        if (!(disc2 > 0.0)) throw ParameterError("HNN(Z^2, B) needs real distinct eigenvalues");
        lambda1 = 0.5 * (tr + std::sqrt(disc2));
        lambda2 = det / lambda1;
        if (!(lambda1 > 1.0 && lambda2 > 0.0 && lambda2 < 1.0))
            throw ParameterError("HNN(Z^2, B) needs eigenvalues λ1 > 1 > λ2 > 0");
        if (b.e[1][0] == 0) throw ParameterError("HNN matrix with B21 = 0 is not supported");
        l1[1] = (lambda1 - static_cast<double>(b.e[0][0])) / static_cast<double>(b.e[1][0]);
        l2[1] = (lambda2 - static_cast<double>(b.e[0][0])) / static_cast<double>(b.e[1][0]);
    }

    int index() const { return static_cast<int>(b.det()); }

    Model model() const {
        return Model(Factor::heintze(lambda1), Factor::millefeuille(1.0 / lambda2, index()),
                     "h2xmf-B(" + std::to_string(b.e[0][0]) + "," + std::to_string(b.e[0][1]) + "," + std::to_string(b.e[1][0]) +
                         "," + std::to_string(b.e[1][1]) + ")-k" + std::to_string(index()));
    }

    friend bool operator==(const HNNGroup& x, const HNNGroup& y) { return x.b == y.b; }
};

struct HNNElement {
    IntMat b = IntMat::two_by_two(3, 1, 1, 1);
    RatVec w{Rational(0), Rational(0)};
    std::int64_t k = 0;

    static HNNElement identity(const IntMat& m) { return HNNElement{m, {Rational(0), Rational(0)}, 0}; }
    static HNNElement t(const IntMat& m) { return HNNElement{m, {Rational(0), Rational(0)}, 1}; }
    static HNNElement a(const IntMat& m) { return HNNElement{m, {Rational(1), Rational(0)}, 0}; }
    static HNNElement b_gen(const IntMat& m) { return HNNElement{m, {Rational(0), Rational(1)}, 0}; }

    friend bool operator==(const HNNElement& x, const HNNElement& y) { return x.b == y.b && x.w == y.w && x.k == y.k; }
};

inline HNNElement multiply(const HNNElement& g, const HNNElement& h) {
    if (!(g.b == h.b)) throw ParameterError("HNN elements from different matrices");
    return HNNElement{g.b, add(g.w, mul_power(g.b, g.k, h.w)), g.k + h.k};
}

inline HNNElement inverse(const HNNElement& g) {
    return HNNElement{g.b, negate(mul_power(g.b, -g.k, g.w)), -g.k};
}

inline std::int64_t height_change(const HNNElement& g) noexcept { return g.k; }

inline HoroPoint act_hnn(const HNNGroup& group, const HNNElement& g, const Model& model, const HoroPoint& pt) {
    if (!(g.b == group.b)) throw ParameterError("act_hnn: element and group use different matrices");
    if (!model.x.is_heintze() || model.y.kind != FactorKind::millefeuille || model.y.branching != group.index() ||
        std::fabs(model.x.base - group.lambda1) > 1e-12 || std::fabs(model.y.base - 1.0 / group.lambda2) > 1e-12)
        throw ParameterError("act_hnn: model must be H²_{λ1} ⋈ H²_{1/λ2}[det B]");
    check_horo_point(model, pt);
    const auto& x = std::get<HPoint>(pt.x);
    const auto& y = std::get<MfPoint>(pt.y);
    const double w0 = g.w[0].to_double();
    const double w1 = g.w[1].to_double();
    const double k = static_cast<double>(g.k);
    const double nx = std::pow(group.lambda1, k) * x.x() + group.l1[0] * w0 + group.l1[1] * w1;
    const double ny = std::pow(group.lambda2, k) * y.plane.x() + group.l2[0] * w0 + group.l2[1] * w1;
    const CosetTree tree(group.b);
    TreePoint sheet(tree.act(g.k, g.w, y.sheet.vertex), y.sheet.offset);
    return HoroPoint{HPoint::at_height(nx, x.height() + k, x.base()),
                     MfPoint(HPoint::at_height(ny, y.plane.height() - k, y.plane.base()), std::move(sheet))};
}

inline std::string to_string(const HNNElement& g) {
    return "hnn(w=(" + g.w[0].str() + "," + g.w[1].str() + "), k=" + std::to_string(g.k) + ")";
}

}  // namespace horoprod::groups
