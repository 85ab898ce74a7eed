#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "errors.hpp"
#include "factor.hpp"

namespace horoprod {

/// Horocyclic product X ⋈ Y = {(x, y) : h_X(x) = -h_Y(y)}.
struct Model {
    Factor x;
    Factor y;
    std::string descriptor;  // as parsed, or synthesized

    Model() = default;
    Model(Factor fx, Factor fy, std::string desc = {}) : x(fx), y(fy), descriptor(std::move(desc)) {
        if (descriptor.empty()) descriptor = factor_descriptor(x) + "_bowtie_" + factor_descriptor(y);
    }

    static Model diestel_leader(int m, int n) { return Model(Factor::tree(m), Factor::tree(n), "dl-" + std::to_string(m) + "-" + std::to_string(n)); }

    bool is_dl() const noexcept { return x.is_tree() && y.is_tree(); }
    bool is_continuous() const noexcept { return !is_dl(); }

    friend bool operator==(const Model& a, const Model& b) { return a.x == b.x && a.y == b.y; }
};

struct HoroPoint {
    FactorPoint x;
    FactorPoint y;

    friend bool operator==(const HoroPoint&, const HoroPoint&) = default;
};

inline constexpr double height_tolerance = 1e-9;

/// Throws StructureError unless p lies in the model.
inline void check_horo_point(const Model& model, const HoroPoint& p) {
    check_factor_point(model.x, p.x);
    check_factor_point(model.y, p.y);
    const double hx = factor_height(model.x, p.x);
    const double hy = factor_height(model.y, p.y);
    if (model.is_dl()) {
        if (hx != -hy) throw StructureError("Diestel-Leader point violates h_X = -h_Y");
    } else if (std::fabs(hx + hy) > height_tolerance * std::max(1.0, std::fabs(hx))) {
        throw StructureError("horocyclic point violates h_X = -h_Y");
    }
}

inline HoroPoint make_horo_point(const Model& model, FactorPoint x, FactorPoint y) {
    HoroPoint p{std::move(x), std::move(y)};
    check_horo_point(model, p);
    return p;
}

inline double horo_height(const Model& model, const HoroPoint& p) { return factor_height(model.x, p.x); }

inline double dist_x(const Model& model, const HoroPoint& p, const HoroPoint& q) { return factor_distance(model.x, p.x, q.x); }
inline double dist_y(const Model& model, const HoroPoint& p, const HoroPoint& q) { return factor_distance(model.y, p.y, q.y); }

/// Point of a plane-like factor at horizontal coordinate u and metric height h.
inline FactorPoint plane_point(const Factor& f, double u, double h) {
    if (f.is_heintze()) return HPoint::at_height(u, h, f.base);
    throw ModelError("plane_point: factor is not a hyperbolic plane");
}

/// Convenience constructor for H²_a ⋈ H²_b points with horospherical
/// coordinates (u, w, t): x = (u, height t), y = (w, height -t).
inline HoroPoint plane_pair(const Model& model, double u, double w, double t) {
    if (!model.x.is_heintze() || !model.y.is_heintze()) throw ModelError("plane_pair needs two hyperbolic factors");
    return HoroPoint{HPoint::at_height(u, t, model.x.base), HPoint::at_height(w, -t, model.y.base)};
}

/// H²_a ⋈ T_n point from a plane point and the tree point it pairs with.
inline HoroPoint plane_tree(const Model& model, double u, const TreePoint& v) {
    if (!model.x.is_heintze() || !model.y.is_tree()) throw ModelError("plane_tree needs a plane X and a tree Y");
    const double t = -model.y.edge_length * v.height();
    return make_horo_point(model, HPoint::at_height(u, t, model.x.base), v);
}

inline HoroPoint dl_point(const Model& model, TreeVertex x, TreeVertex y) {
    if (!model.is_dl()) throw ModelError("dl_point needs a Diestel-Leader model");
    return make_horo_point(model, TreePoint(std::move(x)), TreePoint(std::move(y)));
}

}  // namespace horoprod
