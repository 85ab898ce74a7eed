#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <horoprod/errors.hpp>
#include <horoprod/hyperbolic.hpp>
#include <horoprod/numerics.hpp>

using namespace horoprod;

namespace {

const double e = std::numbers::e;
const double golden_sq = (3.0 + std::sqrt(5.0)) / 2.0;

// Independent oracle: integrate |dz|/y along the semicircle through p and q
// with a composite Simpson rule in the angle variable.
double integrated_semicircle_length(double x1, double x2, double y) {
    const double c = 0.5 * (x1 + x2);
    const double r = std::hypot(x1 - c, y);
    const double t1 = std::atan2(y, x1 - c);
    const double t2 = std::atan2(y, x2 - c);
    const int n = 20000;
    const double h = (t1 - t2) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = t2 + i * h;
        const double f = 1.0 / std::sin(t);  // |dz|/y = r dt / (r sin t)
        sum += (i == 0 || i == n ? 1 : i % 2 ? 4 : 2) * f;
    }
    return std::fabs(sum * h / 3.0);
}

}  // namespace

TEST(HDistance, Examples) {
    EXPECT_NEAR(h_distance(HPoint(0, 1, e), HPoint(0, e, e)), 1.0, 1e-15);
    EXPECT_EQ(h_distance(HPoint(0, 1, e), HPoint(0, 1, e)), 0.0);
    // frozen from the quadrature oracle below
    EXPECT_NEAR(h_distance(HPoint(0, 1, e), HPoint(1, 1, e)), 0.9624236501192069, 1e-15);
}

TEST(HDistance, MatchesQuadratureAlongSemicircle) {
    EXPECT_NEAR(integrated_semicircle_length(0, 1, 1), std::acosh(1.5), 1e-9);
    for (double dx : {0.1, 0.7, 2.0, 5.0}) {
        const double d = h_distance(HPoint(-dx, 1.3, e), HPoint(dx, 1.3, e));
        EXPECT_NEAR(d, integrated_semicircle_length(-dx, dx, 1.3), 1e-8) << dx;
    }
}

TEST(HDistance, RescaledByLogBase) {
    const double d1 = h_distance(HPoint(0, 1, e), HPoint(3, 2, e));
    EXPECT_NEAR(h_distance(HPoint(0, 1, 2), HPoint(3, 2, 2)), d1 / std::log(2.0), 1e-14);
}

TEST(HDistance, MismatchedBaseThrows) { EXPECT_THROW(h_distance(HPoint(0, 1, 2), HPoint(0, 1, 3)), ParameterError); }

TEST(HDistance, InvalidPointsThrow) {
    EXPECT_THROW(HPoint(0, 0, e), ParameterError);
    EXPECT_THROW(HPoint(0, -1, e), ParameterError);
    EXPECT_THROW(HPoint(0, 1, 1.0), ParameterError);
}

TEST(HDistance, MetricAxiomsOnRandomTriples) {
    for (double a : {2.0, e, golden_sq}) {
        numerics::Rng rng(numerics::derive_seed(11, static_cast<std::uint64_t>(a * 1000)));
        for (int i = 0; i < 1000; ++i) {
            auto pt = [&] { return HPoint::at_height(rng.uniform(-5, 5), rng.uniform(-4, 4), a); };
            const HPoint p = pt(), q = pt(), s = pt();
            const double pq = h_distance(p, q), qp = h_distance(q, p);
            EXPECT_EQ(pq, qp);
            EXPECT_LE(h_distance(p, s), pq + h_distance(q, s) + 1e-12);
            EXPECT_GT(pq, 0.0);
        }
    }
}

TEST(HDistance, TinySeparationsKeepRelativeAccuracy) {
    // acosh(1 + u) loses everything below 1e-8; the asinh form does not
    const double d = h_distance(HPoint(0, 1, e), HPoint(1e-12, 1, e));
    EXPECT_NEAR(d / 1e-12, 1.0, 1e-9);
}

TEST(HHeight, Examples) {
    EXPECT_EQ(h_height(HPoint(0, 1, e)), 0.0);
    EXPECT_NEAR(h_height(HPoint(0, e * e, e)), 2.0, 1e-15);
    EXPECT_NEAR(h_height(HPoint(5, 4, 2)), 2.0, 1e-15);
}

TEST(HHeight, OneLipschitz) {
    numerics::Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-5, 5), rng.uniform(-4, 4), 2.0);
        const HPoint q = HPoint::at_height(rng.uniform(-5, 5), rng.uniform(-4, 4), 2.0);
        EXPECT_LE(std::fabs(h_height(p) - h_height(q)), h_distance(p, q) + 1e-12);
    }
}

TEST(HHeight, LimitFormulaAtForty) {
    numerics::Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-3, 3), rng.uniform(-3, 3), e);
        const HVerticalRay ray{rng.uniform(-3, 3), rng.uniform(-2, 2), e};
        const double t = 40.0;
        EXPECT_NEAR(ray.start_height + (t - h_distance(p, ray.at(t))), h_height(p), 1e-6);
    }
}

TEST(HGeodesicBetween, VerticalLine) {
    const HSegment s = h_geodesic_between(HPoint(0, 1, e), HPoint(0, 3, e));
    EXPECT_EQ(s.geodesic().kind, HGeodesic::Kind::vertical_line);
    EXPECT_EQ(s.geodesic().foot, 0.0);
}

TEST(HGeodesicBetween, Semicircle) {
    const HSegment s = h_geodesic_between(HPoint(-1, 1, e), HPoint(1, 1, e));
    EXPECT_EQ(s.geodesic().kind, HGeodesic::Kind::semicircle);
    EXPECT_NEAR(s.geodesic().center, 0.0, 1e-15);
    EXPECT_NEAR(s.geodesic().radius, std::sqrt(2.0), 1e-15);
}

TEST(HGeodesicBetween, Midpoint) {
    const HSegment s = h_geodesic_between(HPoint(0, 1, e), HPoint(0, 4, e));
    const HPoint m = s.at(0.5 * s.length());
    EXPECT_NEAR(m.x(), 0.0, 1e-15);
    EXPECT_NEAR(m.y(), 2.0, 1e-14);
}

TEST(HGeodesicBetween, ArclengthReproducesEndpoints) {
    numerics::Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-5, 5), rng.uniform(-3, 3), 2.0);
        const HPoint q = HPoint::at_height(rng.uniform(-5, 5), rng.uniform(-3, 3), 2.0);
        const HSegment s = h_geodesic_between(p, q);
        const double d = h_distance(p, q);
        EXPECT_NEAR(s.length(), d, 1e-9 * std::max(1.0, d));
        EXPECT_LT(h_distance(s.at(0.0), p), 1e-8);
        EXPECT_LT(h_distance(s.at(d), q), 1e-8);
        // arclength: a point at s splits the segment additively
        const HPoint mid = s.at(0.3 * d);
        EXPECT_NEAR(h_distance(p, mid) + h_distance(mid, q), d, 1e-8);
    }
}

TEST(HGeodesicBetween, CoincidentEndpointsThrow) {
    EXPECT_THROW(h_geodesic_between(HPoint(1, 1, e), HPoint(1, 1, e)), DegenerateInputError);
}

TEST(VerticalRay, Examples) {
    const HPoint a = vertical_ray(HPoint(0, 1, e)).at(1);
    EXPECT_NEAR(a.y(), e, 1e-15);
    EXPECT_EQ(a.x(), 0.0);
    const HPoint b = vertical_ray(HPoint(2, 4, 2)).at(-2);
    EXPECT_NEAR(b.y(), 1.0, 1e-15);
    EXPECT_EQ(b.x(), 2.0);
    EXPECT_EQ(vertical_ray(HPoint(0, 1, e)).at(0), HPoint(0, 1, e));
}

TEST(AlmostVerticalBound, Examples) {
    EXPECT_EQ(almost_vertical_bound(0.0, 1.0), 0.0);
    EXPECT_NEAR(almost_vertical_bound(2.0, 1.0), 1.6574544541530771, 1e-15);
    EXPECT_LT(almost_vertical_bound(1.0, 1.0), almost_vertical_bound(2.0, 1.0));
    EXPECT_THROW(almost_vertical_bound(-0.1, 1.0), ParameterError);
    EXPECT_THROW(almost_vertical_bound(1.0, 0.0), ParameterError);
}

TEST(AlmostVerticalBound, RescalingRules) {
    const double k = 4.0;
    EXPECT_NEAR(almost_vertical_bound(1.0, k, KappaRescaling::stated), std::acosh(std::exp(1.0)) / 4.0, 1e-15);
    EXPECT_NEAR(almost_vertical_bound(1.0, k, KappaRescaling::derived), std::acosh(std::exp(1.0)) / 2.0, 1e-15);
    for (double c = 0.0; c < 5.0; c += 0.25) EXPECT_LE(almost_vertical_bound(c, 1.0), almost_vertical_bound(c + 0.25, 1.0));
}

// In H²_a distances are the curvature -1 ones divided by ln a, so a
// configuration with d <= Δh + C is the curvature -1 configuration with C ln a.
// Its distance to the ray is the unit bound divided by ln a: that is the
// derived rule with kappa = (ln a)². For kappa > 1 the stated rule is smaller
// and is violated by the extremal configuration.
TEST(AlmostVerticalBound, StatedRuleFailsForKappaAboveOne) {
    const double a = 5.0, L = std::log(a), C = 2.0;
    const double kappa = L * L;
    // extremal point: q at the origin height 0, p at height gain Δ with the
    // largest horizontal offset allowed by d <= Δ + C
    const HPoint q = HPoint::at_height(0, 0, a);
    const double rise = 0.0;
    double lo = 0, hi = 64;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h_distance(HPoint::at_height(mid, rise, a), q) <= rise + C ? lo : hi) = mid;
    }
    const double d = distance_to_vertical_ray(HPoint::at_height(lo, rise, a), vertical_ray(q));
    EXPECT_LE(d, almost_vertical_bound(C, kappa, KappaRescaling::derived) + 1e-9);
    EXPECT_GT(d, almost_vertical_bound(C, kappa, KappaRescaling::stated) + 0.1);
}

TEST(DistanceToVerticalRay, AgreesWithMinimization) {
    numerics::Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-3, 3), rng.uniform(-3, 3), e);
        const HVerticalRay ray{rng.uniform(-3, 3), rng.uniform(-3, 3), e};
        // the distance to points of the ray is convex in the parameter
        double lo = 0.0, hi = 30.0;
        for (int k = 0; k < 300; ++k) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            (h_distance(p, ray.at(m1)) < h_distance(p, ray.at(m2)) ? hi : lo) = (h_distance(p, ray.at(m1)) < h_distance(p, ray.at(m2)) ? m2 : m1);
        }
        const double best = h_distance(p, ray.at(0.5 * (lo + hi)));
        EXPECT_NEAR(distance_to_vertical_ray(p, ray), best, 1e-7);
    }
}

TEST(RightTriangle, Examples) {
    EXPECT_NEAR(right_triangle_identity_residual(0, 1), 0.0, 1e-12);
    EXPECT_NEAR(right_triangle_identity_residual(1, 1), 0.0, 1e-9);
    EXPECT_EQ(right_triangle_identity_residual(0, 0), 0.0);
    EXPECT_THROW(right_triangle_identity_residual(-1, 0), ParameterError);
}

TEST(RightTriangle, RandomLegs) {
    numerics::Rng rng(10);
    for (int i = 0; i < 1000; ++i) EXPECT_LE(right_triangle_identity_residual(rng.uniform(0, 3), rng.uniform(0, 3)), 1e-9);
}

TEST(RightTriangle, LegsHaveRequestedLengths) {
    const RightTriangle t = right_triangle(0.7, 1.9);
    EXPECT_NEAR(h_distance(t.right_angle, t.along_opposite), 0.7, 1e-12);
    EXPECT_NEAR(h_distance(t.right_angle, t.along_adjacent), 1.9, 1e-12);
}

TEST(BusemannConvexity, MidpointInequality) {
    numerics::Rng rng(12);
    auto pt = [&] { return HPoint::at_height(rng.uniform(-3, 3), rng.uniform(-3, 3), 2.0); };
    auto mid = [](const HPoint& a, const HPoint& b) {
        const HSegment s = h_geodesic_between(a, b);
        return s.at(0.5 * s.length());
    };
    for (int i = 0; i < 1000; ++i) {
        const HPoint x1 = pt(), x2 = pt(), x3 = pt(), x4 = pt();
        EXPECT_LE(h_distance(mid(x1, x2), mid(x3, x4)), 0.5 * (h_distance(x1, x3) + h_distance(x2, x4)) + 1e-10);
    }
}

TEST(VerticalConvergence, ClosedFormAndMonotone) {
    for (double a : {2.0, e}) {
        double prev = INFINITY;
        for (double t = 0; t <= 30.0; t += 1.0) {
            // heights are in units of ln a; at height t the y coordinate is a^t
            const double d = h_distance(HPoint::at_height(0, t, a), HPoint::at_height(1, t, a));
            EXPECT_NEAR(d, 2 * std::asinh(1.0 / (2 * std::pow(a, t))) / std::log(a), 1e-13);
            EXPECT_LT(d, prev);
            prev = d;
        }
    }
    EXPECT_LT(h_distance(HPoint::at_height(0, 30, e), HPoint::at_height(1, 30, e)), 1e-10);
}

TEST(HeightVariation, GeodesicsAreMostlyVertical) {
    numerics::Rng rng(13);
    const double delta = 0.9;
    for (int i = 0; i < 300; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-10, 10), rng.uniform(-3, 3), e);
        const HPoint q = HPoint::at_height(rng.uniform(-10, 10), rng.uniform(-3, 3), e);
        const HSegment s = h_geodesic_between(p, q);
        EXPECT_GE(s.height_variation(), s.length() - 4 * delta);
    }
}
