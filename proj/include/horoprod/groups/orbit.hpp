#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "../distance.hpp"
#include "../errors.hpp"
#include "../numerics.hpp"
#include "group.hpp"

// Orbit map g -> g.o restricted to a Cayley ball, and the tightest linear
// quasi-isometry fit (1/L)|g| - C <= d(g.o, o) <= L|g| + C over it.

namespace horoprod::groups {

struct BallElement {
    GroupElement element;
    int word_length = 0;
};

/// Cayley ball of radius r for the standard generators and their inverses.
inline std::vector<BallElement> cayley_ball(const Group& g, int radius, std::size_t max_size = 20000) {
    if (radius < 0) throw ParameterError("cayley_ball: negative radius");
    if (radius > 8) throw ResourceError("cayley_ball: radius above 8");
    std::vector<GroupElement> steps;
    for (const auto& gen : g.generators()) {
        steps.push_back(gen.element);
        steps.push_back(inverse(gen.element));
    }
    std::vector<BallElement> ball{{g.identity(), 0}};
    std::map<std::string, int> seen{{to_string(g.identity()), 0}};
    std::size_t frontier_begin = 0;
    for (int r = 1; r <= radius; ++r) {
        const std::size_t frontier_end = ball.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& s : steps) {
                GroupElement next = multiply(ball[i].element, s);
                auto key = to_string(next);
                if (seen.emplace(std::move(key), r).second) {
                    ball.push_back({std::move(next), r});
                    if (ball.size() > max_size) throw ResourceError("cayley_ball: ball larger than the size guard");
                }
            }
        }
        frontier_begin = frontier_end;
    }
    return ball;
}

struct OrbitFit {
    double L = 1.0;
    double C = 0.0;
    std::size_t ball_size = 0;
    int radius = 0;
    std::vector<std::string> generators;
    double max_distance = 0.0;
    bool exact_distances = false;
};

struct OrbitSample {
    int word_length = 0;
    double lo = 0.0;  // certified interval for d(g.o, o)
    double hi = 0.0;
};

/// C(L) = max(0, max_g max(hi - L|g|, |g|/L - lo)) is convex in L; minimize
/// L + C(L) over [1, 64].
inline OrbitFit fit_quasi_isometry(const std::vector<OrbitSample>& samples) {
    auto c_of = [&](double L) {
        double c = 0.0;
        for (const auto& s : samples) {
            const double len = static_cast<double>(s.word_length);
            c = std::max({c, s.hi - L * len, len / L - s.lo});
        }
        return c;
    };
    const auto best = numerics::golden_section([&](double L) { return L + c_of(L); }, 1.0, 64.0, 1e-10, 200);
    OrbitFit fit;
    fit.L = best.argmin;
    if (1.0 + c_of(1.0) <= best.value) fit.L = 1.0;
    fit.C = c_of(fit.L);
    return fit;
}

inline OrbitFit orbit_qi_constants(const Group& g, int radius, const AdmissibleNorm& norm, const Budget& budget = Budget::fast()) {
    const auto ball = cayley_ball(g, radius);
    const Model model = g.model();
    const HoroPoint o = g.origin();
    std::vector<OrbitSample> samples;
    OrbitFit fit;
    fit.exact_distances = model.is_dl();
    for (const auto& b : ball) {
        const HoroPoint p = g.act(b.element, o);
        const DistanceEstimate e = estimate_distance(model, p, o, norm, budget);
        samples.push_back({b.word_length, e.lo, e.hi});
        fit.max_distance = std::max(fit.max_distance, e.hi);
    }
    const OrbitFit f = fit_quasi_isometry(samples);
    fit.L = f.L;
    fit.C = f.C;
    fit.ball_size = ball.size();
    fit.radius = radius;
    for (const auto& gen : g.generators()) fit.generators.push_back(gen.name);
    return fit;
}

}  // namespace horoprod::groups
