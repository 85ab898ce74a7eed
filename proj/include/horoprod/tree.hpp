#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"

// Regular tree T_m (valence m+1) with a fixed end.
//
// A vertex at height h is a digit class: a finitely supported map from levels
// l < -h to {0..m-1}. Moving to the parent forgets level -h-1; a child at
// height h-1 gains a digit at level -h. Reading the digits as base-m places
// gives the coset of Z[1/m] modulo m^{-h}Z, but the tree structure only uses
// the forget/extend operations.

namespace horoprod {

struct TreeVertex {
    int m = 2;
    std::int64_t h = 0;
    std::map<std::int64_t, int> digits;  // level -> nonzero digit

    TreeVertex() = default;
    TreeVertex(int branching, std::int64_t height, std::map<std::int64_t, int> d = {})
        : m(branching), h(height), digits(std::move(d)) {
        validate();
    }

    static TreeVertex root(int branching) { return TreeVertex(branching, 0); }

    int digit(std::int64_t level) const {
        auto it = digits.find(level);
        return it == digits.end() ? 0 : it->second;
    }

    void validate() const {
        if (m < 2) throw ParameterError("tree branching number must be at least 2");
        for (const auto& [level, d] : digits) {
            if (level >= -h) throw StructureError("tree digit at level >= -h");
            if (d <= 0 || d >= m) throw StructureError("tree digit out of range or not canonical");
        }
    }

    friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
    friend auto operator<=>(const TreeVertex& a, const TreeVertex& b) {
        if (auto c = a.m <=> b.m; c != 0) return c;
        if (auto c = a.h <=> b.h; c != 0) return c;
        return a.digits <=> b.digits;
    }
};

inline void require_same_branching(const TreeVertex& u, const TreeVertex& v) {
    if (u.m != v.m) throw ParameterError("tree vertices come from trees with different branching");
}

inline TreeVertex tree_parent(const TreeVertex& v) {
    TreeVertex p = v;
    p.h = v.h + 1;
    p.digits.erase(-v.h - 1);
    return p;
}

inline TreeVertex tree_child(const TreeVertex& v, int digit) {
    if (digit < 0 || digit >= v.m) throw ParameterError("tree_child: digit out of range");
    TreeVertex c = v;
    c.h = v.h - 1;
    if (digit != 0) c.digits[-v.h] = digit;
    return c;
}

inline std::vector<TreeVertex> tree_children(const TreeVertex& v) {
    std::vector<TreeVertex> out;
    out.reserve(static_cast<std::size_t>(v.m));
    for (int d = 0; d < v.m; ++d) out.push_back(tree_child(v, d));
    return out;
}

/// Ancestor of v at height `height` >= v.h.
inline TreeVertex tree_ancestor(const TreeVertex& v, std::int64_t height) {
    if (height < v.h) throw ParameterError("tree_ancestor: target height below the vertex");
    TreeVertex a = v;
    a.h = height;
    a.digits.erase(a.digits.lower_bound(-height), a.digits.end());
    return a;
}

/// Height of the meet of u and v (first common vertex on their up-rays).
/// Level l is forgotten at height -l, so the deepest level where the digit
/// classes disagree decides the meet.
inline std::int64_t tree_meet_height(const TreeVertex& u, const TreeVertex& v) {
    require_same_branching(u, v);
    const std::int64_t h0 = std::max(u.h, v.h);
    auto iu = u.digits.begin();
    auto iv = v.digits.begin();
    const auto ue = u.digits.lower_bound(-h0);
    const auto ve = v.digits.lower_bound(-h0);
    while (iu != ue || iv != ve) {
        if (iu != ue && iv != ve && iu->first == iv->first) {
            if (iu->second != iv->second) return std::max(h0, -iu->first);
            ++iu;
            ++iv;
            continue;
        }
        // A level present in only one map: the other has digit 0 there.
        std::int64_t level;
        if (iu == ue) level = iv->first;
        else if (iv == ve) level = iu->first;
        else level = std::min(iu->first, iv->first);
        return std::max(h0, -level);
    }
    return h0;
}

inline TreeVertex tree_meet(const TreeVertex& u, const TreeVertex& v) {
    return tree_ancestor(u, tree_meet_height(u, v));
}

inline std::int64_t tree_distance(const TreeVertex& u, const TreeVertex& v) {
    const std::int64_t w = tree_meet_height(u, v);
    return (w - u.h) + (w - v.h);
}

/// True when one vertex lies on the up-ray of the other.
inline bool tree_comparable(const TreeVertex& u, const TreeVertex& v) {
    const std::int64_t w = tree_meet_height(u, v);
    return w == u.h || w == v.h;
}

/// Lazily specified downward direction: the digit chosen at level l is a hash
/// of (seed, l). Seed 0 is reserved for the all-zero descent.
struct DownSeed {
    std::uint64_t seed = 0;

    int digit(std::int64_t level, int m) const {
        if (seed == 0) return 0;
        const std::uint64_t mix = numerics::derive_seed(seed, static_cast<std::uint64_t>(level));
        return static_cast<int>(mix % static_cast<std::uint64_t>(m));
    }
};

/// Point at height h(v)+t on the vertical ray through v. Negative t descends
/// along the direction fixed by `down`.
inline TreeVertex tree_vertical_ray(const TreeVertex& v, std::int64_t t,
                                    std::optional<DownSeed> down = std::nullopt) {
    if (t >= 0) return tree_ancestor(v, v.h + t);
    if (!down) throw ParameterError("tree_vertical_ray: descending requires a down-direction seed");
    TreeVertex w = v;
    for (std::int64_t i = 0; i < -t; ++i) w = tree_child(w, down->digit(-w.h, w.m));
    return w;
}

/// Exact BFS distances in the ball of radius r. Guards against balls that
/// would not fit comfortably in memory.
inline std::map<TreeVertex, int> tree_bfs_ball(const TreeVertex& center, int r) {
    if (r < 0) throw ParameterError("tree_bfs_ball: negative radius");
    if (r > 14) throw ResourceError("tree_bfs_ball: radius above 14 is refused");
    const double estimate = std::pow(static_cast<double>(center.m), r) * 2.0;
    if (estimate > 2.0e7) throw ResourceError("tree_bfs_ball: ball too large");
    std::map<TreeVertex, int> dist;
    dist.emplace(center, 0);
    std::deque<TreeVertex> queue{center};
    while (!queue.empty()) {
        TreeVertex v = std::move(queue.front());
        queue.pop_front();
        const int d = dist.at(v);
        if (d == r) continue;
        auto visit = [&](TreeVertex w) {
            if (dist.emplace(w, d + 1).second) queue.push_back(std::move(w));
        };
        visit(tree_parent(v));
        for (int c = 0; c < v.m; ++c) visit(tree_child(v, c));
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Metric points. A TreePoint sits on the edge from `vertex` toward its parent,
// a fraction `offset` of the way up. Heights are real: h(vertex) + offset.

struct TreePoint {
    TreeVertex vertex;
    double offset = 0.0;

    TreePoint() = default;
    explicit TreePoint(TreeVertex v, double off = 0.0) : vertex(std::move(v)), offset(off) {
        if (!(offset >= 0.0 && offset < 1.0)) throw ParameterError("TreePoint offset must lie in [0, 1)");
    }

    double height() const noexcept { return static_cast<double>(vertex.h) + offset; }
    bool is_vertex() const noexcept { return offset == 0.0; }

    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

/// Point at real height `height` on the up-ray of p (height >= p.height()).
inline TreePoint tree_point_up(const TreePoint& p, double height) {
    if (height < p.height()) throw ParameterError("tree_point_up: target below the point");
    if (height < static_cast<double>(p.vertex.h) + 1.0) {
        return TreePoint(p.vertex, height - static_cast<double>(p.vertex.h));
    }
    const double fl = std::floor(height);
    return TreePoint(tree_ancestor(p.vertex, static_cast<std::int64_t>(fl)), height - fl);
}

/// Point at real height `height` on the vertical line through p: up-ray above
/// p, the descent chosen by `down` below it.
inline TreePoint tree_point_on_line(const TreePoint& p, double height, DownSeed down = {}) {
    if (height >= p.height()) return tree_point_up(p, height);
    const double fl = std::floor(height);
    const auto target = static_cast<std::int64_t>(fl);
    TreeVertex v = p.vertex;
    while (v.h > target) v = tree_child(v, down.digit(-v.h, v.m));
    return TreePoint(std::move(v), height - fl);
}

inline double tree_point_distance(const TreePoint& a, const TreePoint& b) {
    require_same_branching(a.vertex, b.vertex);
    if (a.vertex == b.vertex) return std::fabs(a.offset - b.offset);
    const std::int64_t w = tree_meet_height(a.vertex, b.vertex);
    if (w == a.vertex.h || w == b.vertex.h) return std::fabs(a.height() - b.height());
    return 2.0 * static_cast<double>(w) - a.height() - b.height();
}

/// Height of the highest point on the geodesic between a and b.
inline double tree_point_meet_height(const TreePoint& a, const TreePoint& b) {
    if (a.vertex == b.vertex) return std::max(a.height(), b.height());
    const std::int64_t w = tree_meet_height(a.vertex, b.vertex);
    if (w == a.vertex.h || w == b.vertex.h) return std::max(a.height(), b.height());
    return static_cast<double>(w);
}

inline bool tree_points_comparable(const TreePoint& a, const TreePoint& b) {
    return tree_point_meet_height(a, b) == std::max(a.height(), b.height());
}

/// The lower of two comparable points; the vertical line through it contains both.
inline const TreePoint& tree_lower(const TreePoint& a, const TreePoint& b) {
    return a.height() <= b.height() ? a : b;
}

/// Arclength-parameterized geodesic between two tree points.
class TreeGeodesic {
public:
    TreeGeodesic(TreePoint a, TreePoint b)
        : a_(std::move(a)), b_(std::move(b)), top_(tree_point_meet_height(a_, b_)) {}

    double length() const noexcept { return (top_ - a_.height()) + (top_ - b_.height()); }
    double top() const noexcept { return top_; }

    TreePoint at(double s) const {
        const double up = top_ - a_.height();
        if (s <= 0.0) return a_;
        if (s >= length()) return b_;
        if (s <= up) return tree_point_up(a_, a_.height() + s);
        return tree_point_up(b_, std::max(b_.height(), top_ - (s - up)));
    }

    TreePoint at_fraction(double f) const {
        if (f <= 0.0) return a_;
        if (f >= 1.0) return b_;
        return at(f * length());
    }

private:
    TreePoint a_;
    TreePoint b_;
    double top_;
};

inline std::string to_string(const TreeVertex& v) {
    std::string s = "T" + std::to_string(v.m) + "(h=" + std::to_string(v.h) + ";";
    bool first = true;
    for (const auto& [level, d] : v.digits) {
        s += (first ? "" : ",") + std::to_string(level) + ":" + std::to_string(d);
        first = false;
    }
    return s + ")";
}

}  // namespace horoprod
