#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hyperbolic.hpp"
#include "numerics.hpp"
#include "tree.hpp"

// Factor spaces of a horocyclic product and their points.

namespace horoprod {

enum class FactorKind { tree, heintze, millefeuille };

inline const char* factor_kind_name(FactorKind k) {
    switch (k) {
        case FactorKind::tree: return "tree";
        case FactorKind::heintze: return "heintze";
        case FactorKind::millefeuille: return "millefeuille";
    }
    return "?";
}

struct Factor {
    FactorKind kind = FactorKind::heintze;
    int branching = 2;                 // m for trees, k for millefeuille spaces
    double base = std::numbers::e;     // heintze and millefeuille sheets
    double edge_length = 1.0;          // trees only; heights scale with it

    static Factor tree(int m, double edge_length = 1.0) {
        if (m < 2) throw ParameterError("tree factor needs m >= 2");
        if (!(edge_length > 0.0)) throw ParameterError("tree edge length must be positive");
        Factor f;
        f.kind = FactorKind::tree;
        f.branching = m;
        f.edge_length = edge_length;
        f.base = std::numbers::e;
        return f;
    }
    static Factor heintze(double a) {
        if (!(a > 1.0)) throw ParameterError("heintze factor needs base a > 1");
        Factor f;
        f.kind = FactorKind::heintze;
        f.base = a;
        return f;
    }
    static Factor millefeuille(double a, int k) {
        if (!(a > 1.0)) throw ParameterError("millefeuille factor needs base a > 1");
        if (k < 2) throw ParameterError("millefeuille factor needs k >= 2 (k = 1 is a plane)");
        Factor f;
        f.kind = FactorKind::millefeuille;
        f.base = a;
        f.branching = k;
        return f;
    }

    bool is_tree() const noexcept { return kind == FactorKind::tree; }
    bool is_heintze() const noexcept { return kind == FactorKind::heintze; }
    bool is_millefeuille() const noexcept { return kind == FactorKind::millefeuille; }

    friend bool operator==(const Factor&, const Factor&) = default;
};

struct MfPoint {
    HPoint plane;
    TreePoint sheet;

    MfPoint(HPoint p, TreePoint s) : plane(p), sheet(std::move(s)) {
        if (std::fabs(plane.height() - sheet.height()) > 1e-9)
            throw StructureError("millefeuille point: plane and tree heights differ");
    }
    double height() const noexcept { return plane.height(); }

    friend bool operator==(const MfPoint& a, const MfPoint& b) { return a.plane == b.plane && a.sheet == b.sheet; }
};

using FactorPoint = std::variant<TreePoint, HPoint, MfPoint>;

inline void check_factor_point(const Factor& f, const FactorPoint& p) {
    switch (f.kind) {
        case FactorKind::tree: {
            const auto* t = std::get_if<TreePoint>(&p);
            if (!t) throw StructureError("expected a tree point");
            if (t->vertex.m != f.branching) throw ParameterError("tree point has the wrong branching number");
            return;
        }
        case FactorKind::heintze: {
            const auto* h = std::get_if<HPoint>(&p);
            if (!h) throw StructureError("expected a hyperbolic-plane point");
            if (h->base() != f.base) throw ParameterError("hyperbolic point has the wrong base");
            return;
        }
        case FactorKind::millefeuille: {
            const auto* m = std::get_if<MfPoint>(&p);
            if (!m) throw StructureError("expected a millefeuille point");
            if (m->plane.base() != f.base) throw ParameterError("millefeuille point has the wrong base");
            if (m->sheet.vertex.m != f.branching) throw ParameterError("millefeuille point has the wrong branching");
            return;
        }
    }
}

inline double factor_height(const Factor& f, const FactorPoint& p) {
    switch (f.kind) {
        case FactorKind::tree: return f.edge_length * std::get<TreePoint>(p).height();
        case FactorKind::heintze: return std::get<HPoint>(p).height();
        case FactorKind::millefeuille: return std::get<MfPoint>(p).height();
    }
    return 0.0;
}

/// Horizontal coordinate of a plane-like point (heintze or millefeuille sheet).
inline double factor_horizontal(const FactorPoint& p) {
    if (const auto* h = std::get_if<HPoint>(&p)) return h->x();
    if (const auto* m = std::get_if<MfPoint>(&p)) return m->plane.x();
    return 0.0;
}

// ---------------------------------------------------------------------------
// Millefeuille distance.
//
// Sheets through comparable tree points share a copy of the plane, so the
// distance is the plane distance. Otherwise a path must climb to the meet
// height H of the tree points; any plane path reaching height H lifts, so the
// distance is d_X when the plane geodesic reaches H and otherwise the best
// two-leg path through the horocycle at height H.

struct MfDetour {
    bool needed = false;
    double meet_height = 0.0;
    double pivot_x = 0.0;  // horizontal coordinate of the pivot on the horocycle
    double length = 0.0;
};

/// Shortest two-leg plane path from p to q through the horocycle at height H.
/// Both legs grow as the pivot leaves [min x, max x], so the scan stays there.
inline numerics::Minimum horocycle_detour(const HPoint& p, const HPoint& q, double H) {
    require_same_base(p, q);
    const double base = p.base();
    auto cost = [&](double s) {
        const HPoint z = HPoint::at_height(s, H, base);
        return h_distance(p, z) + h_distance(z, q);
    };
    const double lo = std::min(p.x(), q.x());
    const double hi = std::max(p.x(), q.x());
    return numerics::scan_then_refine(cost, lo, hi, 128, 1e-13 * std::max(1.0, hi - lo));
}

inline MfDetour mf_detour(const MfPoint& p, const MfPoint& q) {
    MfDetour d;
    if (tree_points_comparable(p.sheet, q.sheet)) return d;
    const double H = tree_point_meet_height(p.sheet, q.sheet);
    d.meet_height = H;
    if (!(p.plane == q.plane)) {
        if (h_geodesic_between(p.plane, q.plane).max_height() >= H) return d;
    }
    d.needed = true;
    const auto best = horocycle_detour(p.plane, q.plane, H);
    d.pivot_x = best.argmin;
    d.length = best.value;
    return d;
}

inline double mf_distance(const MfPoint& p, const MfPoint& q) {
    if (p.plane.base() != q.plane.base()) throw ParameterError("millefeuille points with different bases");
    require_same_branching(p.sheet.vertex, q.sheet.vertex);
    if (p == q) return 0.0;
    const MfDetour d = mf_detour(p, q);
    return d.needed ? d.length : h_distance(p.plane, q.plane);
}

inline double factor_distance(const Factor& f, const FactorPoint& p, const FactorPoint& q) {
    switch (f.kind) {
        case FactorKind::tree:
            return f.edge_length * tree_point_distance(std::get<TreePoint>(p), std::get<TreePoint>(q));
        case FactorKind::heintze: return h_distance(std::get<HPoint>(p), std::get<HPoint>(q));
        case FactorKind::millefeuille: return mf_distance(std::get<MfPoint>(p), std::get<MfPoint>(q));
    }
    return 0.0;
}

/// Tree coordinate of a millefeuille point at height h riding the up-ray of s.
inline TreePoint sheet_up(const TreePoint& s, double h) { return tree_point_up(s, std::max(h, s.height())); }

// ---------------------------------------------------------------------------
// Factor geodesics, parameterized by arclength fraction.

class MfGeodesic {
public:
    MfGeodesic(const MfPoint& a, const MfPoint& b) : a_(a), b_(b) {
        comparable_ = tree_points_comparable(a.sheet, b.sheet);
        if (a.plane == b.plane) return;  // only possible with comparable sheets
        const MfDetour d = mf_detour(a, b);
        if (d.needed) {
            const HPoint z = HPoint::at_height(d.pivot_x, d.meet_height, a.plane.base());
            if (!(z == a.plane)) pieces_.push_back(h_geodesic_between(a.plane, z));
            if (!(z == b.plane)) pieces_.push_back(h_geodesic_between(z, b.plane));
        } else {
            pieces_.push_back(h_geodesic_between(a.plane, b.plane));
        }
        for (const auto& s : pieces_) length_ += s.length();
        if (!comparable_ && !d.needed) {
            // Switch tree lines at the apex of the plane geodesic.
            const HSegment& s = pieces_.front();
            const double u0 = s.u_start();
            const double u1 = s.u_end();
            apex_fraction_ = (u0 * u1 < 0.0) ? std::fabs(u0) / std::fabs(u1 - u0) : (std::fabs(u0) < std::fabs(u1) ? 0.0 : 1.0);
        }
    }

    double length() const noexcept { return length_; }

    MfPoint at_fraction(double f) const {
        if (f <= 0.0) return a_;
        if (f >= 1.0) return b_;
        const double s = f * length_;
        HPoint z = a_.plane;
        bool second_half = false;
        if (pieces_.size() == 1) {
            z = pieces_[0].at(s);
            second_half = f > apex_fraction_;
        } else {
            const double l0 = pieces_[0].length();
            if (s <= l0) {
                z = pieces_[0].at(s);
            } else {
                z = pieces_[1].at(s - l0);
                second_half = true;
            }
        }
        const double h = z.height();
        if (comparable_) return MfPoint(z, sheet_up(tree_lower(a_.sheet, b_.sheet), h));
        return MfPoint(z, sheet_up(second_half ? b_.sheet : a_.sheet, h));
    }

private:
    MfPoint a_;
    MfPoint b_;
    bool comparable_ = true;
    double apex_fraction_ = 1.0;
    double length_ = 0.0;
    std::vector<HSegment> pieces_;
};

class FactorGeodesic {
public:
    FactorGeodesic(const Factor& f, const FactorPoint& a, const FactorPoint& b) : factor_(f), a_(a), b_(b) {
        switch (f.kind) {
            case FactorKind::tree:
                impl_ = TreeGeodesic(std::get<TreePoint>(a), std::get<TreePoint>(b));
                break;
            case FactorKind::heintze: {
                const auto& p = std::get<HPoint>(a);
                const auto& q = std::get<HPoint>(b);
                if (!(p == q)) impl_ = h_geodesic_between(p, q);
                break;
            }
            case FactorKind::millefeuille:
                impl_ = MfGeodesic(std::get<MfPoint>(a), std::get<MfPoint>(b));
                break;
        }
    }

    double length() const {
        if (const auto* t = std::get_if<TreeGeodesic>(&impl_)) return factor_.edge_length * t->length();
        if (const auto* h = std::get_if<HSegment>(&impl_)) return h->length();
        if (const auto* m = std::get_if<MfGeodesic>(&impl_)) return m->length();
        return 0.0;
    }

    FactorPoint at_fraction(double f) const {
        if (f <= 0.0) return a_;
        if (f >= 1.0) return b_;
        if (const auto* t = std::get_if<TreeGeodesic>(&impl_)) return t->at_fraction(f);
        if (const auto* h = std::get_if<HSegment>(&impl_)) return h->at_fraction(f);
        if (const auto* m = std::get_if<MfGeodesic>(&impl_)) return m->at_fraction(f);
        return a_;
    }

private:
    Factor factor_;
    FactorPoint a_;
    FactorPoint b_;
    std::variant<std::monostate, TreeGeodesic, HSegment, MfGeodesic> impl_;
};

/// Whether the coordinate of this factor can be slaved to a prescribed height
/// while moving from a to b: tree coordinates must share a vertical line.
inline bool can_slave(const Factor& f, const FactorPoint& a, const FactorPoint& b) {
    switch (f.kind) {
        case FactorKind::tree: return tree_points_comparable(std::get<TreePoint>(a), std::get<TreePoint>(b));
        case FactorKind::heintze: return true;
        case FactorKind::millefeuille:
            return tree_points_comparable(std::get<MfPoint>(a).sheet, std::get<MfPoint>(b).sheet);
    }
    return false;
}

/// Point at metric height `height` whose horizontal coordinate is interpolated
/// between a and b with weight f. Tree coordinates ride the vertical line
/// through the lower endpoint (descending along digit 0 below it).
inline FactorPoint slave_point(const Factor& fac, const FactorPoint& a, const FactorPoint& b, double f, double height) {
    if (f <= 0.0) return a;
    if (f >= 1.0) return b;
    switch (fac.kind) {
        case FactorKind::tree: {
            const auto& ta = std::get<TreePoint>(a);
            const auto& tb = std::get<TreePoint>(b);
            return tree_point_on_line(tree_lower(ta, tb), height / fac.edge_length);
        }
        case FactorKind::heintze: {
            const auto& p = std::get<HPoint>(a);
            const auto& q = std::get<HPoint>(b);
            return HPoint::at_height(p.x() + f * (q.x() - p.x()), height, fac.base);
        }
        case FactorKind::millefeuille: {
            const auto& p = std::get<MfPoint>(a);
            const auto& q = std::get<MfPoint>(b);
            const HPoint plane = HPoint::at_height(p.plane.x() + f * (q.plane.x() - p.plane.x()), height, fac.base);
            return MfPoint(plane, tree_point_on_line(tree_lower(p.sheet, q.sheet), height));
        }
    }
    return a;
}

inline std::string factor_descriptor(const Factor& f) {
    std::ostringstream os;
    os.precision(17);
    switch (f.kind) {
        case FactorKind::tree:
            os << "t-" << f.branching;
            if (f.edge_length != 1.0) os << "@" << f.edge_length;
            break;
        case FactorKind::heintze: os << "h2-" << f.base; break;
        case FactorKind::millefeuille: os << "h2-" << f.base << "[" << f.branching << "]"; break;
    }
    return os.str();
}

}  // namespace horoprod
