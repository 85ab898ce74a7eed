#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "model.hpp"
#include "numerics.hpp"

// Random points for property checks. Points stay within a box of the given
// spread around the base point, so factor distances are O(spread).

namespace horoprod {

/// Tree vertex at height h whose digits are random on the `depth` levels just
/// below the cut, so it lies within 2 depth of the up-ray of the root.
inline TreeVertex random_tree_vertex(numerics::Rng& rng, int m, std::int64_t h, int depth) {
    std::map<std::int64_t, int> digits;
    for (std::int64_t level = -h - depth; level < -h; ++level) {
        const int d = static_cast<int>(rng.integer(0, m - 1));
        if (d) digits[level] = d;
    }
    return TreeVertex(m, h, std::move(digits));
}

inline FactorPoint random_factor_point(numerics::Rng& rng, const Factor& f, double height, double spread) {
    switch (f.kind) {
        case FactorKind::heintze: return HPoint::at_height(rng.uniform(-spread, spread), height, f.base);
        case FactorKind::tree: {
            // height is metric; the vertex height is height / edge, which the
            // callers keep integral for trees
            const double th = height / f.edge_length;
            const double fl = std::floor(th + 1e-12);
            const int depth = static_cast<int>(spread) + 1;
            return TreePoint(random_tree_vertex(rng, f.branching, static_cast<std::int64_t>(fl), depth), std::max(0.0, th - fl));
        }
        case FactorKind::millefeuille: {
            const double fl = std::floor(height);
            const int depth = static_cast<int>(spread) + 1;
            return MfPoint(HPoint::at_height(rng.uniform(-spread, spread), height, f.base),
                           TreePoint(random_tree_vertex(rng, f.branching, static_cast<std::int64_t>(fl), depth), height - fl));
        }
    }
    return HPoint::at_height(0.0, height, f.base);
}

/// Random point of the model with |height| <= spread. DL points are vertices;
/// tree factors of continuous models get random offsets on their edges.
inline HoroPoint random_horo_point(numerics::Rng& rng, const Model& model, double spread) {
    const auto range = static_cast<std::int64_t>(spread);
    if (model.is_dl()) {
        const std::int64_t h = rng.integer(-range, range);
        const int depth = static_cast<int>(range) + 1;
        return HoroPoint{TreePoint(random_tree_vertex(rng, model.x.branching, h, depth)),
                         TreePoint(random_tree_vertex(rng, model.y.branching, -h, depth))};
    }
    if (model.y.is_tree()) {
        // pick the tree point first; the plane height follows
        const double th = rng.uniform(-spread, spread) / model.y.edge_length;
        const double fl = std::floor(th);
        const TreePoint v(random_tree_vertex(rng, model.y.branching, static_cast<std::int64_t>(fl), static_cast<int>(range) + 1),
                          th - fl);
        return HoroPoint{HPoint::at_height(rng.uniform(-spread, spread), -model.y.edge_length * v.height(), model.x.base), v};
    }
    if (model.x.is_tree()) {
        const double th = rng.uniform(-spread, spread) / model.x.edge_length;
        const double fl = std::floor(th);
        const TreePoint u(random_tree_vertex(rng, model.x.branching, static_cast<std::int64_t>(fl), static_cast<int>(range) + 1),
                          th - fl);
        const double h = model.x.edge_length * u.height();
        return HoroPoint{u, random_factor_point(rng, model.y, -h, spread)};
    }
    const double t = rng.uniform(-spread, spread);
    return HoroPoint{random_factor_point(rng, model.x, t, spread), random_factor_point(rng, model.y, -t, spread)};
}

}  // namespace horoprod
