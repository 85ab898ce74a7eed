#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "norm.hpp"
#include "numerics.hpp"

// Change of decomposition for (N1 x N2) x| R fibered with T_k over height:
// ((n1, n2), t, v) with h_T(v) = -t goes to the point ((n1, t), ((n2, t), v))
// of (N1 x| R) ⋈ (N2 x| R)[k]. The second factor runs its R coordinate the
// other way, so its height is -t, matching v.

namespace horoprod {

struct DymarzSpace {
    double a1 = 2.0;  // base of N1 x| R
    double a2 = 2.0;  // base of N2 x| R
    int k = 2;        // tree branching

    Model model() const { return Model(Factor::heintze(a1), Factor::millefeuille(a2, k)); }
};

struct FiberedPoint {
    double n1 = 0.0;
    double n2 = 0.0;
    double t = 0.0;
    TreePoint v;

    friend bool operator==(const FiberedPoint&, const FiberedPoint&) = default;
};

inline void check_fibered(const DymarzSpace& s, const FiberedPoint& p) {
    if (p.v.vertex.m != s.k) throw StructureError("fibered point: tree branching does not match the space");
    if (std::fabs(p.t + p.v.height()) > height_tolerance * std::max(1.0, std::fabs(p.t)))
        throw StructureError("fibered point violates t = -h_T(v)");
}

inline HoroPoint dymarz_map(const DymarzSpace& s, const FiberedPoint& p) {
    check_fibered(s, p);
    return HoroPoint{HPoint::at_height(p.n1, p.t, s.a1), MfPoint(HPoint::at_height(p.n2, -p.t, s.a2), p.v)};
}

inline FiberedPoint dymarz_inverse(const DymarzSpace& s, const HoroPoint& p) {
    const Model m = s.model();
    check_horo_point(m, p);
    const auto& x = std::get<HPoint>(p.x);
    const auto& w = std::get<MfPoint>(p.y);
    FiberedPoint out{x.x(), w.plane.x(), x.height(), w.sheet};
    check_fibered(s, out);
    return out;
}

// Distances written directly in group coordinates (n, t) of R x|_a R:
// translate the first point to the identity, then
// d = 2 asinh(sqrt(sinh²(τL/2) + ν² e^{-τL} / 4)) / L with ν = a^{-t}(n' - n),
// τ = t' - t, L = ln a.

inline double heintze_group_distance(double n, double t, double n2, double t2, double a) {
    const double L = std::log(a);
    const double nu = (n2 - n) * std::exp(-t * L);
    const double tau = t2 - t;
    const double sh = std::sinh(0.5 * tau * L);
    return 2.0 * std::asinh(std::sqrt(sh * sh + 0.25 * nu * nu * std::exp(-tau * L))) / L;
}

/// Highest height on the group geodesic between two points.
inline double heintze_group_apex(double n, double t, double n2, double t2, double a) {
    if (n == n2) return std::max(t, t2);
    const double y1 = std::pow(a, t);
    const double y2 = std::pow(a, t2);
    const double c = 0.5 * ((n2 * n2 - n * n) + (y2 * y2 - y1 * y1)) / (n2 - n);
    const double r = std::hypot(n - c, y1);
    return std::log(r) / std::log(a);
}

/// Distance in the second factor (N2 x| R)[k] from fibered coordinates.
inline double fibered_w_distance(const DymarzSpace& s, const FiberedPoint& p, const FiberedPoint& q) {
    const double hp = -p.t;
    const double hq = -q.t;
    if (tree_points_comparable(p.v, q.v)) return heintze_group_distance(p.n2, hp, q.n2, hq, s.a2);
    const double H = tree_point_meet_height(p.v, q.v);
    if (heintze_group_apex(p.n2, hp, q.n2, hq, s.a2) >= H) return heintze_group_distance(p.n2, hp, q.n2, hq, s.a2);
    auto cost = [&](double z) { return heintze_group_distance(p.n2, hp, z, H, s.a2) + heintze_group_distance(z, H, q.n2, hq, s.a2); };
    const double lo = std::min(p.n2, q.n2);
    const double hi = std::max(p.n2, q.n2);
    return numerics::scan_then_refine(cost, lo, hi, 128, 1e-13 * std::max(1.0, hi - lo)).value;
}

/// Chord sum of N(d_{N1 x| R}, d_{(N2 x| R)[k]}) along fibered samples.
inline double fibered_chord_length(const DymarzSpace& s, const std::vector<FiberedPoint>& pts, const AdmissibleNorm& norm) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[i + 1];
        total += norm(heintze_group_distance(p.n1, p.t, q.n1, q.t, s.a1), fibered_w_distance(s, p, q));
    }
    return total;
}

}  // namespace horoprod
