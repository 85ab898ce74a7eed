#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "../errors.hpp"
#include "../factor.hpp"
#include "../hyperbolic.hpp"
#include "../numerics.hpp"

// Thin-triangle constant of a factor: the largest distance from a point on
// one side of a geodesic triangle to the union of the other two sides.

namespace horoprod::lab {

struct DeltaEstimate {
    double value = 0.0;
    long triangles = 0;
    double radius = 0.0;
    bool exact = false;  // trees
};

namespace detail {

// Curvature -1 computations in the upper half plane.
struct UnitSegment {
    HPoint a;
    HPoint b;
    HSegment seg;

    UnitSegment(const HPoint& p, const HPoint& q) : a(p), b(q), seg(h_geodesic_between(p, q)) {}

    HPoint at_fraction(double f) const {
        const HGeodesic& g = seg.geodesic();
        const double u0 = g.parameter_of(a);
        const double u1 = g.parameter_of(b);
        return seg.at_parameter(u0 + f * (u1 - u0));
    }
};

/// Distance from p to a segment; d(p, seg(f)) is convex in f, so a golden
/// section search finds the minimum.
inline double distance_to_segment(const HPoint& p, const UnitSegment& s) {
    return numerics::golden_section([&](double f) { return h_distance(p, s.at_fraction(f)); }, 0.0, 1.0, 1e-9, 80).value;
}

/// Random point at curvature -1 distance <= r from i (rejection from a box).
inline HPoint random_point_in_ball(numerics::Rng& rng, double r) {
    const HPoint centre(0.0, 1.0, std::numbers::e);
    for (;;) {
        const double h = rng.uniform(-r, r);
        const double span = std::sinh(r) * std::exp(h);
        const HPoint p = HPoint::at_height(rng.uniform(-span, span), h, std::numbers::e);
        if (h_distance(centre, p) <= r) return p;
    }
}

inline double triangle_thinness(const HPoint& p, const HPoint& q, const HPoint& s, int points_per_side) {
    if (p == q || q == s || p == s) return 0.0;
    const UnitSegment sides[3] = {UnitSegment(p, q), UnitSegment(q, s), UnitSegment(s, p)};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 1; j < points_per_side; ++j) {
            const HPoint x = sides[i].at_fraction(static_cast<double>(j) / points_per_side);
            const double d = std::min(distance_to_segment(x, sides[(i + 1) % 3]), distance_to_segment(x, sides[(i + 2) % 3]));
            worst = std::max(worst, d);
        }
    }
    return worst;
}

}  // namespace detail

/// Trees give 0. For H²_a, triangles are sampled in balls of radius
/// 0.5, 1, ..., radius (each level with its own stream), so the estimate
/// can only grow with the radius for a fixed seed. The value is rescaled
/// by 1 / ln a.
inline DeltaEstimate estimate_delta(const Factor& f, int samples, double radius, std::uint64_t seed = 0) {
    if (samples < 1) throw ParameterError("estimate_delta: samples must be positive");
    if (!(radius > 0.0)) throw ParameterError("estimate_delta: radius must be positive");
    DeltaEstimate out;
    out.radius = radius;
    if (f.is_tree()) {
        out.exact = true;
        return out;
    }
    if (!f.is_heintze()) throw CapabilityError("estimate_delta supports trees and hyperbolic planes");
    const int levels = std::max(1, static_cast<int>(std::floor(2.0 * radius + 1e-9)));
    double worst = 0.0;
    for (int level = 1; level <= levels; ++level) {
        const double r = std::min(radius, 0.5 * level);
        numerics::Rng rng(numerics::derive_seed(seed, static_cast<std::uint64_t>(level)));
        for (int i = 0; i < samples; ++i) {
            const HPoint p = detail::random_point_in_ball(rng, r);
            const HPoint q = detail::random_point_in_ball(rng, r);
            const HPoint s = detail::random_point_in_ball(rng, r);
            worst = std::max(worst, detail::triangle_thinness(p, q, s, 16));
            ++out.triangles;
        }
    }
    out.value = worst / std::log(f.base);
    return out;
}

}  // namespace horoprod::lab
