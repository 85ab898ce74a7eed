#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "../dl_graph.hpp"
#include "../distance.hpp"
#include "../errors.hpp"
#include "../model.hpp"
#include "../serialize.hpp"

// Vertical structure of DL geodesics. Every edge of DL(m,n) changes the
// height by one, so a geodesic is a concatenation of maximal monotone runs,
// each a vertical geodesic segment. For each q in the ball we compute the
// largest number of direction changes over all geodesics from o to q
// (a dynamic programme over the geodesic interval). A bounded value means
// every geodesic stays a bounded concatenation of vertical pieces, the
// finite-scale form of the decomposition of the boundary into the two
// vertical families.

namespace horoprod::lab {

struct TurnProfile {
    int radius = 0;
    int max_turns = 0;
    long targets = 0;
    long geodesic_vertices = 0;  // sum of geodesic interval sizes
    std::optional<HoroPoint> worst_target;
};

namespace detail {

/// Max turns over geodesics o -> q. States: (vertex, last move up?).
inline int max_turns_to(const DLBall& ball, const Model& model, const DLBall::Vertex& q, long& interval_size) {
    const HoroPoint qp = ball.to_point(q);
    const HoroPoint op = ball.to_point(ball.origin());
    const auto total = dl_distance(model, op, qp);
    if (total == 0) return 0;
    struct State {
        int best_up = -1;    // arrived by an up move
        int best_down = -1;  // arrived by a down move
    };
    // layers of the geodesic interval, keyed by the tree coordinates
    auto key_of = [&](const DLBall::Vertex& v) {
        const HoroPoint p = ball.to_point(v);
        return std::make_pair(std::get<TreePoint>(p.x).vertex, std::get<TreePoint>(p.y).vertex);
    };
    std::map<std::pair<TreeVertex, TreeVertex>, DLBall::Vertex> current{{key_of(ball.origin()), ball.origin()}};
    std::map<std::pair<TreeVertex, TreeVertex>, State> states{{key_of(ball.origin()), State{0, 0}}};
    for (std::int64_t step = 0; step < total; ++step) {
        std::map<std::pair<TreeVertex, TreeVertex>, DLBall::Vertex> next;
        std::map<std::pair<TreeVertex, TreeVertex>, State> next_states;
        for (const auto& [k, v] : current) {
            const State s = states.at(k);
            for (const auto& w : ball.neighbours(v)) {
                const HoroPoint wp = ball.to_point(w);
                if (dl_distance(model, wp, qp) != total - step - 1) continue;
                const bool up = w.h > v.h;
                // turns after this move, given the previous direction
                int via = -1;
                if (step == 0) {
                    via = 0;
                } else {
                    if (s.best_up >= 0) via = std::max(via, s.best_up + (up ? 0 : 1));
                    if (s.best_down >= 0) via = std::max(via, s.best_down + (up ? 1 : 0));
                }
                const auto kw = key_of(w);
                State& t = next_states[kw];
                if (up) t.best_up = std::max(t.best_up, via);
                else t.best_down = std::max(t.best_down, via);
                next.emplace(kw, w);
            }
        }
        interval_size += static_cast<long>(next.size());
        current = std::move(next);
        states = std::move(next_states);
    }
    const State& end = states.begin()->second;
    return std::max(end.best_up, end.best_down);
}

}  // namespace detail

inline TurnProfile geodesic_turn_profile(int m, int n, int r) {
    if (r < 0) throw ParameterError("boundary probe: negative radius");
    if (r > 7) throw ResourceError("boundary probe: radius above 7");
    const DLBall ball(m, n, r);
    const Model model = Model::diestel_leader(m, n);
    TurnProfile out;
    out.radius = r;
    for (const auto& q : ball.ball(r)) {
        long size = 0;
        const int t = detail::max_turns_to(ball, model, q, size);
        out.geodesic_vertices += size;
        ++out.targets;
        if (t > out.max_turns || !out.worst_target) {
            out.worst_target = ball.to_point(q);
            out.max_turns = t;
        }
    }
    return out;
}

}  // namespace horoprod::lab
