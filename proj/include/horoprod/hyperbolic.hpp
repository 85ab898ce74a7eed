#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "errors.hpp"

// Rescaled hyperbolic plane H^2_a in upper-half-plane coordinates.
//
// Distances are the curvature -1 distance divided by ln a, so H^2_a has
// curvature -(ln a)^2 and the height of (x, y) is log_a(y). Heights increase
// toward the point at infinity y -> +inf.

namespace horoprod {

class HPoint {
public:
    HPoint(double x, double y, double base) : x_(x), y_(y), base_(base) {
        validate();
        height_ = std::log(y_) / std::log(base_);
    }

    /// Point with horospherical coordinates (x, height). The height is stored
    /// exactly as given, which keeps coordinate round trips exact.
    static HPoint at_height(double x, double height, double base) {
        HPoint p;
        p.x_ = x;
        p.base_ = base;
        p.height_ = height;
        p.y_ = std::exp(height * std::log(base));
        p.validate();
        return p;
    }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double base() const noexcept { return base_; }
    double height() const noexcept { return height_; }
    double log_base() const noexcept { return std::log(base_); }

    friend bool operator==(const HPoint& a, const HPoint& b) {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.base_ == b.base_;
    }

private:
    HPoint() = default;

    void validate() const {
        if (!(base_ > 1.0) || !std::isfinite(base_)) throw ParameterError("HPoint: base must satisfy a > 1");
        if (!(y_ > 0.0) || !std::isfinite(y_)) throw ParameterError("HPoint: y must be positive and finite");
        if (!std::isfinite(x_)) throw ParameterError("HPoint: x must be finite");
    }

    double x_ = 0.0;
    double y_ = 1.0;
    double height_ = 0.0;
    double base_ = std::numbers::e;
};

inline void require_same_base(const HPoint& p, const HPoint& q) {
    if (p.base() != q.base()) throw ParameterError("hyperbolic points with different bases are not comparable");
}

/// Curvature -1 distance (no rescaling). Uses the asinh form, which stays
/// accurate for nearly coincident points.
inline double unit_curvature_distance(double x1, double y1, double x2, double y2) {
    const double chord = std::hypot(x1 - x2, y1 - y2);
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(y1 * y2)));
}

inline double h_distance(const HPoint& p, const HPoint& q) {
    require_same_base(p, q);
    return unit_curvature_distance(p.x(), p.y(), q.x(), q.y()) / p.log_base();
}

inline double h_height(const HPoint& p) noexcept { return p.height(); }

struct HGeodesic {
    enum class Kind { vertical_line, semicircle };

    Kind kind = Kind::vertical_line;
    double foot = 0.0;    // vertical lines: the x coordinate
    double center = 0.0;  // semicircles
    double radius = 0.0;
    double base = std::numbers::e;

    /// Point at curvature -1 arclength parameter u. For vertical lines
    /// u = ln y; for semicircles u is measured from the apex toward +x.
    HPoint at_parameter(double u) const {
        if (kind == Kind::vertical_line) return HPoint(foot, std::exp(u), base);
        return HPoint(center + radius * std::tanh(u), radius / std::cosh(u), base);
    }

    double parameter_of(const HPoint& p) const {
        if (kind == Kind::vertical_line) return std::log(p.y());
        return std::asinh((p.x() - center) / p.y());
    }
};

/// log(cosh(u)) without overflow.
inline double log_cosh(double u) {
    const double a = std::fabs(u);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// Arclength-parameterized geodesic segment. Points are computed relative to
/// the start point, which stays accurate for nearly vertical semicircles whose
/// centers are far away.
class HSegment {
public:
    HSegment(HGeodesic geodesic, const HPoint& start, double u0, double u1)
        : geodesic_(geodesic), x0_(start.x()), y0_(start.y()), h0_(start.height()), u0_(u0), u1_(u1),
          log_base_(std::log(geodesic.base)) {}

    const HGeodesic& geodesic() const noexcept { return geodesic_; }

    double length() const noexcept { return std::fabs(u1_ - u0_) / log_base_; }

    double height_at_parameter(double u) const {
        if (geodesic_.kind == HGeodesic::Kind::vertical_line) return h0_ + (u - u0_) / log_base_;
        return h0_ + (log_cosh(u0_) - log_cosh(u)) / log_base_;
    }

    HPoint at_parameter(double u) const {
        const double h = height_at_parameter(u);
        if (geodesic_.kind == HGeodesic::Kind::vertical_line) return HPoint::at_height(x0_, h, geodesic_.base);
        // x(u) - x(u0) = r (tanh u - tanh u0) = y0 sinh(u - u0) / cosh u
        const double x = x0_ + y0_ * std::sinh(u - u0_) * std::exp(-log_cosh(u));
        return HPoint::at_height(x, h, geodesic_.base);
    }

    /// Point at distance s (in H^2_a units) from the start.
    HPoint at(double s) const {
        const double dir = u1_ >= u0_ ? 1.0 : -1.0;
        return at_parameter(u0_ + dir * s * log_base_);
    }

    HPoint at_fraction(double f) const { return at_parameter(u0_ + (u1_ - u0_) * f); }

    /// Highest height reached on the segment.
    double max_height() const {
        if (geodesic_.kind == HGeodesic::Kind::semicircle && u0_ * u1_ < 0.0) return height_at_parameter(0.0);
        return std::max(height_at_parameter(u0_), height_at_parameter(u1_));
    }

    /// Total variation of the height along the segment (closed form).
    double height_variation() const {
        const double a = height_at_parameter(u0_);
        const double b = height_at_parameter(u1_);
        if (geodesic_.kind == HGeodesic::Kind::semicircle && u0_ * u1_ < 0.0) {
            const double top = height_at_parameter(0.0);
            return (top - a) + (top - b);
        }
        return std::fabs(a - b);
    }

    double u_start() const noexcept { return u0_; }
    double u_end() const noexcept { return u1_; }

private:
    HGeodesic geodesic_;
    double x0_;
    double y0_;
    double h0_;
    double u0_;
    double u1_;
    double log_base_;
};

/// Geodesic through (xa, ya) and (xb, yb) with the parameters of both points.
/// Written to avoid cancellation when xa ~ xb.
struct SegmentFrame {
    HGeodesic geodesic;
    double u0 = 0.0;
    double u1 = 0.0;
};

inline SegmentFrame segment_frame(double xa, double ya, double xb, double yb, double base) {
    SegmentFrame f;
    f.geodesic.base = base;
    if (xa == xb) {
        f.geodesic.kind = HGeodesic::Kind::vertical_line;
        f.geodesic.foot = xa;
        f.u0 = std::log(ya);
        f.u1 = std::log(yb);
        return f;
    }
    const double dx = xa - xb;
    const double dy2 = (ya - yb) * (ya + yb);
    const double ca = (dx * dx - dy2) / (2.0 * dx);   // xa - center
    const double cb = (-dx * dx - dy2) / (2.0 * dx);  // xb - center
    f.geodesic.kind = HGeodesic::Kind::semicircle;
    f.geodesic.center = xa - ca;
    f.geodesic.radius = std::hypot(ca, ya);
    f.u0 = std::asinh(ca / ya);
    f.u1 = std::asinh(cb / yb);
    return f;
}

inline HGeodesic h_geodesic_through(const HPoint& p, const HPoint& q) {
    require_same_base(p, q);
    return segment_frame(p.x(), p.y(), q.x(), q.y(), p.base()).geodesic;
}

inline HSegment h_geodesic_between(const HPoint& p, const HPoint& q) {
    require_same_base(p, q);
    if (p == q) throw DegenerateInputError("h_geodesic_between: endpoints coincide");
    const SegmentFrame f = segment_frame(p.x(), p.y(), q.x(), q.y(), p.base());
    return HSegment(f.geodesic, p, f.u0, f.u1);
}

/// Vertical ray based at `origin`, parameterized by height gain.
struct HVerticalRay {
    double foot;
    double start_height;
    double base;

    HPoint at(double t) const { return HPoint::at_height(foot, start_height + t, base); }

    HGeodesic geodesic() const {
        HGeodesic g;
        g.kind = HGeodesic::Kind::vertical_line;
        g.foot = foot;
        g.base = base;
        return g;
    }
};

inline HVerticalRay vertical_ray(const HPoint& p) { return HVerticalRay{p.x(), p.height(), p.base()}; }

/// Distance from p to the vertical ray (closed form). The nearest point of
/// the full vertical line through the foot sits at y* = hypot(dx, p.y).
inline double distance_to_vertical_ray(const HPoint& p, const HVerticalRay& ray) {
    if (p.base() != ray.base) throw ParameterError("vertical ray and point have different bases");
    const double dx = p.x() - ray.foot;
    const double start_y = std::exp(ray.start_height * std::log(ray.base));
    const double nearest_y = std::hypot(dx, p.y());
    if (nearest_y >= start_y) return std::asinh(std::fabs(dx) / p.y()) / p.log_base();
    return unit_curvature_distance(p.x(), p.y(), ray.foot, start_y) / p.log_base();
}

/// How the curvature -1 bound is transported to CAT(-kappa).
enum class KappaRescaling {
    stated,   // (1/kappa) f(sqrt(kappa) C)
    derived,  // (1/sqrt(kappa)) f(sqrt(kappa) C), which is what rescaling the metric gives
};

inline double almost_vertical_bound(double c, double kappa = 1.0, KappaRescaling rule = KappaRescaling::stated) {
    if (!(c >= 0.0)) throw ParameterError("almost_vertical_bound: C must be non-negative");
    if (!(kappa > 0.0)) throw ParameterError("almost_vertical_bound: kappa must be positive");
    const double root = std::sqrt(kappa);
    const double unit = std::acosh(std::exp(0.5 * root * c));
    return rule == KappaRescaling::stated ? unit / kappa : unit / root;
}

struct RightTriangle {
    HPoint right_angle;
    HPoint along_adjacent;
    HPoint along_opposite;
};

/// Right triangle with the right angle at i, one leg up the imaginary axis and
/// the other along the unit circle (curvature -1).
inline RightTriangle right_triangle(double opposite, double adjacent) {
    if (!(opposite >= 0.0) || !(adjacent >= 0.0)) throw ParameterError("right_triangle: legs must be non-negative");
    const double e = std::numbers::e;
    return RightTriangle{HPoint(0.0, 1.0, e), HPoint(0.0, std::exp(adjacent), e),
                         HPoint(std::tanh(opposite), 1.0 / std::cosh(opposite), e)};
}

inline double right_triangle_identity_residual(double opposite, double adjacent) {
    const RightTriangle tri = right_triangle(opposite, adjacent);
    const double hyp = h_distance(tri.along_adjacent, tri.along_opposite);
    return std::fabs(std::cosh(hyp) - std::cosh(opposite) * std::cosh(adjacent));
}

}  // namespace horoprod
