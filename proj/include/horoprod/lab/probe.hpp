#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../distance.hpp"
#include "../errors.hpp"
#include "../model.hpp"
#include "../serialize.hpp"

// Coarse connectivity below a horosphere: is there a chain p_0 = witness,
// ..., p_n = base with consecutive steps of length at most C and every
// h(p_i) <= 0?

namespace horoprod::lab {

enum class ProbeVerdict { connected_below, obstructed, inconclusive };

inline const char* probe_verdict_name(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::connected_below: return "connected-below";
        case ProbeVerdict::obstructed: return "obstructed";
        case ProbeVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ProbeResult {
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    double step = 1.0;           // C
    double search_radius = 0.0;  // graph radius (DL) or depth (discretized)
    long explored = 0;
    std::vector<HoroPoint> chain;  // witness ... base, when connected
    json certificate = json::object();
    std::string method;
};

inline json to_json(const ProbeResult& r) {
    json j = document("probe");
    j["verdict"] = probe_verdict_name(r.verdict);
    j["step"] = r.step;
    j["search_radius"] = r.search_radius;
    j["explored"] = r.explored;
    j["method"] = r.method;
    json chain = json::array();
    for (const auto& p : r.chain) chain.push_back(horoprod::to_json(p));
    j["chain"] = std::move(chain);
    j["certificate"] = r.certificate;
    return j;
}

namespace detail {

using DLKey = std::pair<TreeVertex, TreeVertex>;

inline std::vector<DLKey> dl_neighbours(const DLKey& v) {
    std::vector<DLKey> out;
    const TreeVertex xp = tree_parent(v.first);
    const TreeVertex yp = tree_parent(v.second);
    for (int j = 0; j < v.second.m; ++j) out.emplace_back(xp, tree_child(v.second, j));
    for (int i = 0; i < v.first.m; ++i) out.emplace_back(tree_child(v.first, i), yp);
    return out;
}

inline ProbeResult probe_dl(const Model& model, double c, const HoroPoint& witness, const HoroPoint& base,
                            std::optional<int> radius) {
    const auto& wx = std::get<TreePoint>(witness.x);
    const auto& bx = std::get<TreePoint>(base.x);
    const auto& wy = std::get<TreePoint>(witness.y);
    const auto& by = std::get<TreePoint>(base.y);
    if (!wx.is_vertex() || !bx.is_vertex() || !wy.is_vertex() || !by.is_vertex())
        throw StructureError("probe: Diestel-Leader witnesses must be vertices");
    const int step = static_cast<int>(std::floor(c + 1e-12));
    if (step < 1) throw ParameterError("probe: C must be at least 1 on a graph");
    const auto d0 = dl_distance(model, witness, base);
    const int R = radius ? *radius : static_cast<int>(d0) + 2 * step + 2;
    if (R > 24) throw ResourceError("probe: search radius above 24");

    ProbeResult out;
    out.step = c;
    out.search_radius = R;
    out.method = "bfs-restricted-graph";

    auto in_region = [&](const DLKey& v) {
        if (v.first.h > 0) return false;
        const HoroPoint p{TreePoint(v.first), TreePoint(v.second)};
        return dl_distance(model, p, base) <= R;
    };
    // all vertices within graph distance `step` of v (intermediate vertices
    // are unconstrained; only chain points must stay below)
    auto steps_from = [&](const DLKey& v) {
        std::map<DLKey, int> seen{{v, 0}};
        std::deque<DLKey> q{v};
        std::vector<DLKey> out_steps;
        while (!q.empty()) {
            DLKey u = q.front();
            q.pop_front();
            const int d = seen[u];
            if (d > 0) out_steps.push_back(u);
            if (d == step) continue;
            for (auto& w : dl_neighbours(u)) {
                if (seen.emplace(w, d + 1).second) q.push_back(std::move(w));
            }
        }
        return out_steps;
    };

    const DLKey start{wx.vertex, wy.vertex};
    const DLKey goal{bx.vertex, by.vertex};
    std::map<DLKey, DLKey> parent{{start, start}};
    std::deque<DLKey> queue{start};
    bool found = start == goal;
    while (!queue.empty() && !found) {
        const DLKey v = queue.front();
        queue.pop_front();
        for (auto& w : steps_from(v)) {
            if (parent.count(w) || !in_region(w)) continue;
            parent.emplace(w, v);
            if (w == goal) {
                found = true;
                break;
            }
            queue.push_back(std::move(w));
        }
    }
    out.explored = static_cast<long>(parent.size());
    if (found) {
        std::vector<HoroPoint> rev;
        for (DLKey v = goal;; v = parent.at(v)) {
            rev.push_back(HoroPoint{TreePoint(v.first), TreePoint(v.second)});
            if (v == start) break;
        }
        out.chain.assign(rev.rbegin(), rev.rend());
        out.verdict = ProbeVerdict::connected_below;
        out.certificate = json{{"chain_steps", out.chain.size() - 1}};
        return out;
    }
    // A step of length <= C between points at heights <= 0 has its X tree
    // geodesic below height floor(C/2), so X ancestors at that height are
    // preserved along every admissible chain.
    const std::int64_t level = step / 2;
    const TreeVertex wa = tree_ancestor(wx.vertex, level);
    const TreeVertex ba = tree_ancestor(bx.vertex, level);
    if (!(wa == ba)) {
        out.verdict = ProbeVerdict::obstructed;
        out.certificate = json{{"invariant", "x-ancestor"},
                               {"level", level},
                               {"witness_ancestor", horoprod::to_json(wa)},
                               {"base_ancestor", horoprod::to_json(ba)},
                               {"explored_component", out.explored}};
    } else {
        out.verdict = ProbeVerdict::inconclusive;
        out.certificate = json{{"reason", "search radius exhausted"}, {"explored_component", out.explored}};
    }
    return out;
}

// H²_a ⋈ T_n: heights t_j = -j * mesh (j = 0..levels), plane grid anchored
// at the base point with spacing mesh * a^t * ln a (metric spacing about
// mesh), tree points on the up-rays of the witness and base tree points.
// Steps join grid points with max(d_X, d_Y) <= C.
inline ProbeResult probe_plane_tree(const Model& model, double c, const HoroPoint& witness, const HoroPoint& base,
                                    double mesh, int levels) {
    if (!(mesh > 0.0)) throw ParameterError("probe: mesh must be positive");
    const auto& wx = std::get<HPoint>(witness.x);
    const auto& bx = std::get<HPoint>(base.x);
    const auto& wy = std::get<TreePoint>(witness.y);
    const auto& by = std::get<TreePoint>(base.y);
    const double a = model.x.base;
    const double edge = model.y.edge_length;

    ProbeResult out;
    out.step = c;
    out.search_radius = levels * mesh;
    out.method = "discretized-horoball";

    struct GridNode {
        int level;
        double x;
        TreePoint y;
    };
    std::vector<GridNode> nodes;
    std::vector<std::vector<std::size_t>> by_level(static_cast<std::size_t>(levels) + 1);
    const double lo = std::min(wx.x(), bx.x());
    const double hi = std::max(wx.x(), bx.x());
    const double spacing0 = mesh * std::log(a);
    const double width = hi - lo;
    // level 0 spacing divides the witness offset so both endpoints are nodes
    const long k0 = std::max(1L, static_cast<long>(std::ceil(width / spacing0)));
    const double s0 = width > 0.0 ? width / static_cast<double>(k0) : spacing0;
    for (int j = 0; j <= levels; ++j) {
        const double t = -j * mesh;
        const double s = s0 * std::pow(a, t);
        const long count = static_cast<long>(std::ceil((width + 4.0 * s0) / s));
        if (count > 20000) throw ResourceError("probe: discretization too fine");
        const double th = -t / edge;
        std::vector<TreePoint> ys{tree_point_up(wy, std::max(wy.height(), th))};
        const TreePoint other = tree_point_up(by, std::max(by.height(), th));
        if (!(other == ys.front())) ys.push_back(other);
        for (const auto& y : ys) {
            if (std::fabs(y.height() - th) > 1e-9) continue;  // ray does not reach this level
            for (long i = 0; i <= count; ++i) {
                const double x = lo - 2.0 * s0 + static_cast<double>(i) * s;
                by_level[static_cast<std::size_t>(j)].push_back(nodes.size());
                nodes.push_back({j, x, y});
            }
        }
    }
    // exact endpoints
    auto add_endpoint = [&](const HPoint& x, const TreePoint& y) {
        by_level[0].push_back(nodes.size());
        nodes.push_back({0, x.x(), y});
        return nodes.size() - 1;
    };
    if (std::fabs(wx.height()) > 1e-9 || std::fabs(bx.height()) > 1e-9)
        throw StructureError("probe: witness and base must lie on the 0-horosphere");
    const std::size_t start = add_endpoint(wx, wy);
    const std::size_t goal = add_endpoint(bx, by);

    auto point_of = [&](const GridNode& n) {
        return HoroPoint{HPoint::at_height(n.x, -n.level * mesh, a), n.y};
    };
    const int reach = static_cast<int>(std::ceil(c / mesh)) + 1;
    std::vector<long> parent(nodes.size(), -1);
    parent[start] = static_cast<long>(start);
    std::deque<std::size_t> queue{start};
    bool found = start == goal;
    while (!queue.empty() && !found) {
        const std::size_t v = queue.front();
        queue.pop_front();
        const HoroPoint pv = point_of(nodes[v]);
        const int j = nodes[v].level;
        for (int jj = std::max(0, j - reach); jj <= std::min(levels, j + reach) && !found; ++jj) {
            for (std::size_t w : by_level[static_cast<std::size_t>(jj)]) {
                if (parent[w] >= 0) continue;
                const HoroPoint pw = point_of(nodes[w]);
                if (std::max(dist_x(model, pv, pw), dist_y(model, pv, pw)) > c) continue;
                parent[w] = static_cast<long>(v);
                if (w == goal) {
                    found = true;
                    break;
                }
                queue.push_back(w);
            }
        }
    }
    out.explored = static_cast<long>(std::count_if(parent.begin(), parent.end(), [](long p) { return p >= 0; }));
    if (found) {
        std::vector<HoroPoint> rev;
        for (std::size_t v = goal;; v = static_cast<std::size_t>(parent[v])) {
            rev.push_back(point_of(nodes[v]));
            if (v == start) break;
        }
        rev.back() = witness;
        rev.front() = base;
        out.chain.assign(rev.rbegin(), rev.rend());
        out.verdict = ProbeVerdict::connected_below;
        out.certificate = json{{"chain_steps", out.chain.size() - 1}, {"mesh", mesh}, {"grid_nodes", nodes.size()}};
    } else {
        out.verdict = ProbeVerdict::inconclusive;
        out.certificate = json{{"reason", "no chain inside the discretized region"}, {"mesh", mesh}, {"grid_nodes", nodes.size()}};
    }
    return out;
}

}  // namespace detail

struct ProbeOptions {
    std::optional<int> radius;  // DL search radius
    double mesh = 0.25;         // discretization mesh
    int levels = 8;             // discretization depth in mesh units
};

/// DL models: exact BFS in the restricted graph plus an ancestor invariant
/// that certifies obstruction. H²⋈T: BFS on a discretization (never
/// reports obstructed). Other models are a CapabilityError.
inline ProbeResult horosphere_connectivity_probe(const Model& model, double c, const HoroPoint& witness, const HoroPoint& base,
                                                 const ProbeOptions& opt = {}) {
    check_horo_point(model, witness);
    check_horo_point(model, base);
    if (!(c > 0.0)) throw ParameterError("probe: C must be positive");
    if (horo_height(model, witness) != 0.0 || horo_height(model, base) != 0.0)
        throw StructureError("probe: witness and base must lie on the 0-horosphere");
    if (model.is_dl()) return detail::probe_dl(model, c, witness, base, opt.radius);
    if (model.x.is_heintze() && model.y.is_tree()) return detail::probe_plane_tree(model, c, witness, base, opt.mesh, opt.levels);
    throw CapabilityError("probe supports Diestel-Leader graphs and H²⋈T models");
}

}  // namespace horoprod::lab
