#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "../descriptor.hpp"
#include "../distance.hpp"
#include "../dl_graph.hpp"
#include "../dymarz.hpp"
#include "../errors.hpp"
#include "../groups/britton.hpp"
#include "../groups/group.hpp"
#include "../groups/orbit.hpp"
#include "../hyperbolic.hpp"
#include "../numerics.hpp"
#include "../sampling.hpp"
#include "../serialize.hpp"
#include "boundary.hpp"
#include "classify.hpp"
#include "delta.hpp"
#include "probe.hpp"
#include "report.hpp"

// Registered checks. Each one samples (or enumerates) configurations,
// computes a margin per configuration (positive = slack) and passes when the
// worst margin clears the tolerance. Every check is a pure function of its
// configuration.

namespace horoprod::lab {

struct CheckContext {
    CheckConfig cfg;
    std::string model_text;
    std::optional<AdmissibleNorm> norm;
    int samples = 0;
    double tol = 0.0;

    numerics::Rng rng(std::uint64_t stream) const { return numerics::Rng(numerics::derive_seed(cfg.seed, stream)); }

    Budget budget(Budget b = Budget::fast()) const {
        b.seed = cfg.seed;
        b.tol = tol;
        return b;
    }
};

struct CheckSpec {
    std::string id;
    std::string anchor;
    std::string default_model;  // empty: the check takes no model
    std::string default_norm;   // empty: the check uses no norm
    int default_samples = 0;
    double default_tol = 0.0;
    std::function<void(const CheckContext&, CheckReport&)> run;
};

namespace checks {

// ---------------------------------------------------------------------------
// model helpers

inline Model product_model(const CheckContext& c) {
    const Descriptor d = parse_descriptor(c.model_text);
    if (!d.model) throw CapabilityError("this check needs a product model, got the single factor '" + c.model_text + "'");
    return *d.model;
}

inline Factor single_factor(const CheckContext& c) {
    const Descriptor d = parse_descriptor(c.model_text);
    if (!d.factor) throw CapabilityError("this check needs a single factor (e.g. h2-e or t-2), got '" + c.model_text + "'");
    return *d.factor;
}

inline Factor plane_factor(const CheckContext& c) {
    const Factor f = single_factor(c);
    if (!f.is_heintze()) throw CapabilityError("this check needs a hyperbolic plane factor h2-a");
    return f;
}

inline groups::Group model_group(const CheckContext& c) {
    const Descriptor d = parse_descriptor(c.model_text);
    if (!d.group) throw CapabilityError("model '" + c.model_text + "' is not the model space of a supported group");
    return *d.group;
}

inline groups::GroupElement random_word_element(numerics::Rng& rng, const groups::Group& g, int max_length) {
    const auto gens = g.generators();
    groups::GroupElement e = g.identity();
    const auto len = rng.integer(0, max_length);
    for (std::int64_t i = 0; i < len; ++i) {
        const auto& s = gens[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(gens.size()) - 1))].element;
        e = groups::multiply(e, rng.coin() ? s : groups::inverse(s));
    }
    return e;
}

inline json pair_json(const HoroPoint& p, const HoroPoint& q) { return json{{"p", to_json(p)}, {"q", to_json(q)}}; }

inline json plane_json(const HPoint& p) { return horoprod::to_json(p); }

// ---------------------------------------------------------------------------
// distance bounds

inline void distance_upper_bound(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    const AdmissibleNorm& norm = *c.norm;
    WorstCase w;
    long mismatches = 0;
    long clamped = 0;
    if (model.is_dl() && c.cfg.exhaustive) {
        // Translation invariance reduces pairs in B(o, r) to pairs (o, v)
        // with v in B(o, 2r).
        const int rad = *c.cfg.exhaustive;
        if (rad < 0 || rad > 7) throw ResourceError("exhaustive radius must lie in [0, 7]");
        const DLBall ball(model.x.branching, model.y.branching, 2 * rad);
        const HoroPoint o = ball.to_point(ball.origin());
        for (const auto& v : ball.ball(2 * rad)) {
            const HoroPoint q = ball.to_point(v);
            const double bfs = *ball.distance(v);
            const double formula = static_cast<double>(dl_distance(model, o, q));
            const double lower = lower_bound_distance(model, o, q, norm);
            const double upper = upper_bound_distance(model, o, q);
            const auto dx = static_cast<long>(dist_x(model, o, q));
            const auto dy = static_cast<long>(dist_y(model, o, q));
            // pieces aligned with the integer points of both legs
            const long pieces = std::lcm(std::max(1L, dx), std::max(1L, dy));
            double witness = path_length(witness_path(model, o, q), norm, static_cast<int>(pieces));
            // graph paths have integer length; drop the chord-sum rounding
            if (std::fabs(witness - std::round(witness)) < 1e-9) witness = std::round(witness);
            if (formula != bfs) ++mismatches;
            const double margin = formula == bfs ? std::min({upper - bfs, bfs - lower, upper - witness}) : -1.0;
            w.record(margin, [&] {
                return json{{"p", to_json(o)}, {"q", to_json(q)}, {"bfs", bfs}, {"formula", formula},
                            {"lower", lower}, {"upper", upper}, {"witness_length", witness}};
            });
        }
        r.samples = w.count();
        r.details["mode"] = "exhaustive";
        r.details["radius"] = rad;
        r.details["ball_size"] = ball.size();
        r.details["formula_mismatches"] = mismatches;
        conclude(r, w, w.margin() >= 0.0 && mismatches == 0);
        return;
    }
    numerics::Rng rng = c.rng(1);
    const Budget budget = c.budget();
    for (int i = 0; i < c.samples; ++i) {
        const HoroPoint p = random_horo_point(rng, model, 3.0);
        const HoroPoint q = random_horo_point(rng, model, 3.0);
        const double lower = lower_bound_distance(model, p, q, norm);
        const double upper = upper_bound_distance(model, p, q);
        const DistanceEstimate e = estimate_distance(model, p, q, norm, budget);
        const double witness = path_length(witness_path(model, p, q), norm, budget.final_refinement);
        if (e.clamped) ++clamped;
        const double margin = e.clamped ? -1.0 : std::min({upper - e.hi, e.hi - lower, e.hi - e.lo, upper - witness});
        w.record(margin, [&] {
            json j = pair_json(p, q);
            j["lower"] = lower;
            j["upper"] = upper;
            j["estimate"] = to_json(e);
            j["witness_length"] = witness;
            return j;
        });
    }
    r.samples = w.count();
    r.details["mode"] = model.is_dl() ? "sampled-exact" : "sampled-estimate";
    r.details["clamped_estimates"] = clamped;
    if (!model.is_dl()) r.details["budget"] = to_json(budget);
    conclude(r, w, w.margin() >= -c.tol && clamped == 0);
}

inline void estimate_gap(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    if (model.is_dl()) throw CapabilityError("estimate-gap needs a continuous model");
    constexpr double ratio = 0.35;
    numerics::Rng rng = c.rng(2);
    const Budget budget = c.budget(Budget{});
    WorstCase w;
    double worst_ratio = 0.0;
    for (int i = 0; i < c.samples; ++i) {
        const HoroPoint p = random_horo_point(rng, model, 3.0);
        const HoroPoint q = random_horo_point(rng, model, 3.0);
        const DistanceEstimate e = estimate_distance(model, p, q, *c.norm, budget);
        const double gap = e.hi - e.lo;
        if (e.hi > 0.0) worst_ratio = std::max(worst_ratio, gap / e.hi);
        w.record(ratio * e.hi - gap, [&] {
            json j = pair_json(p, q);
            j["estimate"] = to_json(e);
            return j;
        });
    }
    r.details["max_relative_gap"] = worst_ratio;
    r.details["allowed_relative_gap"] = ratio;
    r.details["budget"] = to_json(budget);
    conclude(r, w, w.margin() >= -c.tol);
}

inline void dl_exact(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    if (!model.is_dl()) throw CapabilityError("dl-exact needs a Diestel-Leader model");
    const int rad = c.cfg.exhaustive.value_or(4);
    if (rad < 0 || rad > 7) throw ResourceError("exhaustive radius must lie in [0, 7]");
    const DLCertificate cert = certify_dl_distance(model.x.branching, model.y.branching, rad);
    r.samples = cert.pairs;
    r.worst_margin = -static_cast<double>(cert.mismatches);
    r.pass = cert.passed();
    r.details["radius"] = rad;
    r.details["pairs"] = cert.pairs;
    r.details["mismatches"] = cert.mismatches;
    if (!r.pass && cert.counterexample) r.counterexample = pair_json(cert.counterexample->first, cert.counterexample->second);
}

// ---------------------------------------------------------------------------
// hyperbolic plane facts

inline void almost_vertical(const CheckContext& c, CheckReport& r) {
    const Factor f = plane_factor(c);
    const double L = std::log(f.base);
    const double kappa = L * L;
    numerics::Rng rng = c.rng(3);
    WorstCase w;
    json per_c = json::array();
    for (double C : {0.1, 0.5, 1.0, 2.0}) {
        const double bound = almost_vertical_bound(C, kappa, KappaRescaling::derived);
        double worst = 0.0;
        long violations = 0;
        for (int i = 0; i < c.samples; ++i) {
            const HPoint q = HPoint::at_height(rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0), f.base);
            const double rise = rng.uniform(-0.5 * C, 6.0);
            const double target = rise + C;
            auto at = [&](double u) { return HPoint::at_height(q.x() + u, q.height() + rise, f.base); };
            // largest horizontal offset with d(p, q) <= h(p) - h(q) + C
            double hi = 1.0;
            while (h_distance(at(hi), q) < target) hi *= 2.0;
            double lo = 0.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (h_distance(at(mid), q) <= target ? lo : hi) = mid;
            }
            const double choice = rng.uniform01();
            const double u = (choice < 0.25 ? lo : lo * rng.uniform01()) * (rng.coin() ? 1.0 : -1.0);
            const HPoint p = at(u);
            const double d = distance_to_vertical_ray(p, vertical_ray(q));
            worst = std::max(worst, d);
            if (d > bound + c.tol) ++violations;
            w.record(bound - d, [&] {
                return json{{"C", C}, {"p", plane_json(p)}, {"q", plane_json(q)}, {"distance_to_ray", d}, {"bound", bound}};
            });
        }
        per_c.push_back(json{{"C", C}, {"bound", bound}, {"max_distance", worst}, {"violations", violations}});
    }
    r.samples = w.count();
    r.details["per_C"] = std::move(per_c);
    r.details["kappa"] = kappa;
    r.details["kappa_rule"] = "derived";
    conclude(r, w, w.margin() >= -c.tol);
}

inline void right_triangle_check(const CheckContext& c, CheckReport& r) {
    numerics::Rng rng = c.rng(4);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const double opp = rng.uniform(0.0, 3.0);
        const double adj = rng.uniform(0.0, 3.0);
        const double res = right_triangle_identity_residual(opp, adj);
        w.record(c.tol - res, [&] { return json{{"opposite", opp}, {"adjacent", adj}, {"residual", res}}; });
    }
    conclude(r, w, w.margin() >= 0.0);
}

inline void height_lipschitz(const CheckContext& c, CheckReport& r) {
    const Factor f = single_factor(c);
    numerics::Rng rng = c.rng(5);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const FactorPoint p = random_factor_point(rng, f, f.is_tree() ? static_cast<double>(rng.integer(-4, 4)) : rng.uniform(-4, 4), 4.0);
        const FactorPoint q = random_factor_point(rng, f, f.is_tree() ? static_cast<double>(rng.integer(-4, 4)) : rng.uniform(-4, 4), 4.0);
        const double d = factor_distance(f, p, q);
        const double dh = std::fabs(factor_height(f, p) - factor_height(f, q));
        w.record(d - dh, [&] { return json{{"p", to_json(p)}, {"q", to_json(q)}, {"distance", d}, {"height_change", dh}}; });
    }
    conclude(r, w, w.margin() >= (f.is_tree() ? 0.0 : -c.tol));
}

inline void limit_formula(const CheckContext& c, CheckReport& r) {
    const Factor f = plane_factor(c);
    constexpr double t = 40.0;
    numerics::Rng rng = c.rng(6);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), f.base);
        const HVerticalRay ray{rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0), f.base};
        const double limit = ray.start_height + (t - h_distance(p, ray.at(t)));
        const double err = std::fabs(limit - p.height());
        w.record(c.tol - err, [&] {
            return json{{"p", plane_json(p)}, {"ray_foot", ray.foot}, {"ray_start_height", ray.start_height}, {"t", t}, {"error", err}};
        });
    }
    conclude(r, w, w.margin() >= 0.0);
}

inline void busemann_convexity(const CheckContext& c, CheckReport& r) {
    const Factor f = single_factor(c);
    if (f.is_millefeuille()) throw CapabilityError("busemann-convexity supports trees and hyperbolic planes");
    numerics::Rng rng = c.rng(7);
    WorstCase w;
    auto point = [&]() {
        return random_factor_point(rng, f, f.is_tree() ? static_cast<double>(rng.integer(-3, 3)) : rng.uniform(-3, 3), 3.0);
    };
    auto midpoint = [&](const FactorPoint& a, const FactorPoint& b) -> FactorPoint {
        if (a == b) return a;
        if (f.is_tree()) return TreeGeodesic(std::get<TreePoint>(a), std::get<TreePoint>(b)).at_fraction(0.5);
        const auto& pa = std::get<HPoint>(a);
        const auto& pb = std::get<HPoint>(b);
        const HSegment s = h_geodesic_between(pa, pb);
        const HGeodesic& g = s.geodesic();
        return s.at_parameter(0.5 * (g.parameter_of(pa) + g.parameter_of(pb)));
    };
    for (int i = 0; i < c.samples; ++i) {
        const FactorPoint x1 = point(), x2 = point(), x3 = point(), x4 = point();
        const FactorPoint x5 = midpoint(x1, x2);
        const FactorPoint x6 = midpoint(x3, x4);
        const double lhs = factor_distance(f, x5, x6);
        const double rhs = 0.5 * (factor_distance(f, x1, x3) + factor_distance(f, x2, x4));
        w.record(rhs - lhs, [&] {
            return json{{"x1", to_json(x1)}, {"x2", to_json(x2)}, {"x3", to_json(x3)}, {"x4", to_json(x4)}, {"lhs", lhs}, {"rhs", rhs}};
        });
    }
    conclude(r, w, w.margin() >= -c.tol);
}

inline void vertical_convergence(const CheckContext& c, CheckReport& r) {
    const Factor f = single_factor(c);
    numerics::Rng rng = c.rng(8);
    WorstCase w;
    if (f.is_tree()) {
        for (int i = 0; i < c.samples; ++i) {
            const auto h = rng.integer(-3, 3);
            const TreeVertex u = random_tree_vertex(rng, f.branching, h, 5);
            const TreeVertex v = random_tree_vertex(rng, f.branching, h, 5);
            const std::int64_t meet = tree_meet_height(u, v);
            for (std::int64_t t = 0; t <= 8; ++t) {
                const auto d = tree_distance(tree_vertical_ray(u, t), tree_vertical_ray(v, t));
                const std::int64_t expected = std::max<std::int64_t>(0, 2 * (meet - h - t));
                w.record(d == expected ? 0.0 : -1.0, [&] {
                    return json{{"u", to_json(u)}, {"v", to_json(v)}, {"t", t}, {"distance", d}, {"expected", expected}};
                });
            }
        }
        r.details["mode"] = "tree-exact";
        conclude(r, w, w.margin() >= 0.0);
        return;
    }
    if (!f.is_heintze()) throw CapabilityError("vertical-convergence supports trees and hyperbolic planes");
    const double L = std::log(f.base);
    const double t_end = 30.0 / L;  // 30 units of curvature -1 height
    constexpr int steps = 30;
    constexpr double final_bound = 1e-10;
    for (int i = 0; i < c.samples; ++i) {
        const double x1 = rng.uniform(-1.0, 1.0);
        double x2 = rng.uniform(-1.0, 1.0);
        if (x2 == x1) x2 += 0.5;
        double prev = INFINITY;
        double worst = INFINITY;
        double last = 0.0;
        double worst_t = 0.0;
        for (int s = 0; s <= steps; ++s) {
            const double t = t_end * s / steps;
            const double d = h_distance(HPoint::at_height(x1, t, f.base), HPoint::at_height(x2, t, f.base));
            const double closed = 2.0 * std::asinh(std::fabs(x1 - x2) / (2.0 * std::exp(t * L))) / L;
            const double m = std::min({prev - d, c.tol - std::fabs(d - closed)});
            if (m < worst) {
                worst = m;
                worst_t = t;
            }
            prev = d;
            last = d;
        }
        const double margin = std::min(worst, final_bound - last);
        w.record(margin, [&] { return json{{"x1", x1}, {"x2", x2}, {"worst_t", worst_t}, {"final_distance", last}}; });
    }
    r.details["mode"] = "closed-form";
    r.details["t_end"] = t_end;
    r.details["final_bound"] = final_bound;
    conclude(r, w, w.margin() >= 0.0);
}

inline void height_variation(const CheckContext& c, CheckReport& r) {
    const Factor f = plane_factor(c);
    const double delta = c.cfg.delta;
    constexpr int quadrature = 1024;
    numerics::Rng rng = c.rng(9);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const HPoint p = HPoint::at_height(rng.uniform(-10.0, 10.0), rng.uniform(-3.0, 3.0), f.base);
        const HPoint q = HPoint::at_height(rng.uniform(-10.0, 10.0), rng.uniform(-3.0, 3.0), f.base);
        if (p == q) continue;
        const HSegment s = h_geodesic_between(p, q);
        const double u0 = s.geodesic().parameter_of(p);
        const double u1 = s.geodesic().parameter_of(q);
        double variation = 0.0;
        double prev = p.height();
        for (int j = 1; j <= quadrature; ++j) {
            const double h = s.height_at_parameter(u0 + (u1 - u0) * j / quadrature);
            variation += std::fabs(h - prev);
            prev = h;
        }
        const double len = h_distance(p, q);
        w.record(variation - (len - 4.0 * delta), [&] {
            return json{{"p", plane_json(p)}, {"q", plane_json(q)}, {"length", len}, {"variation", variation}, {"delta", delta}};
        });
    }
    r.samples = w.count();
    r.details["delta"] = delta;
    r.details["quadrature_points"] = quadrature;
    conclude(r, w, w.margin() >= -c.tol);
}

inline void d_prime_sandwich(const CheckContext& c, CheckReport& r) {
    const Factor f = plane_factor(c);
    const AdmissibleNorm& norm = *c.norm;
    const bool equality_everywhere = norm.tag() == NormTag::linf;
    const Budget budget = c.budget(Budget{});
    numerics::Rng rng = c.rng(10);
    WorstCase w;
    double sup_gap = 0.0;
    const int vertical = std::max(1, c.samples / 10);
    for (int i = 0; i < c.samples + vertical; ++i) {
        const bool is_vertical = i >= c.samples;
        HPoint x1 = HPoint::at_height(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), f.base);
        HPoint x2 = HPoint::at_height(is_vertical ? x1.x() : rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), f.base);
        while (h_distance(x1, x2) > 12.0) x2 = HPoint::at_height(0.5 * (x1.x() + x2.x()), x2.height(), f.base);
        const double d = h_distance(x1, x2);
        const DistanceEstimate e = d_prime_estimate(x1, x2, norm, budget);
        sup_gap = std::max(sup_gap, d - e.hi);
        double margin = d - e.hi;
        if (is_vertical || equality_everywhere) margin = std::min(margin, -std::fabs(d - e.hi));
        w.record(margin, [&] {
            return json{{"x1", plane_json(x1)}, {"x2", plane_json(x2)}, {"d_X", d}, {"estimate", to_json(e)}, {"vertical", is_vertical}};
        });
    }
    r.samples = w.count();
    r.details["sup_dX_minus_dprime_hi"] = sup_gap;
    r.details["vertical_pairs"] = vertical;
    r.details["equality_expected_everywhere"] = equality_everywhere;
    r.details["budget"] = to_json(budget);
    conclude(r, w, w.margin() >= -c.tol);
}

// ---------------------------------------------------------------------------
// horocyclic product structure

inline void unique_vertical_geodesic(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    if (!model.x.is_heintze() || !model.y.is_heintze()) throw CapabilityError("unique-vertical-geodesic needs H²_a ⋈ H²_b");
    const AdmissibleNorm& norm = *c.norm;
    constexpr double T = 3.0;
    constexpr int interior = 3;
    const int refinement = std::max(64, c.cfg.exhaustive.value_or(64));
    auto vertical_point = [&](double t) { return plane_pair(model, 0.0, 0.0, t); };
    std::vector<HoroPoint> base;
    for (int i = 0; i <= interior + 1; ++i) base.push_back(vertical_point(-T + 2.0 * T * i / (interior + 1)));
    const double straight = path_length(HoroPath::uniform(model, base, SegmentRule::lead_x), norm, refinement);
    WorstCase w;
    const char* modes[] = {"x", "y", "both", "both+height"};
    for (int k = 1; k <= interior; ++k) {
        for (double eps : {0.1, 0.5, 1.0}) {
            for (int mode = 0; mode < 4; ++mode) {
                for (double sign : {1.0, -1.0}) {
                    const auto& px = std::get<HPoint>(base[static_cast<std::size_t>(k)].x);
                    const auto& py = std::get<HPoint>(base[static_cast<std::size_t>(k)].y);
                    const double t = px.height() + (mode == 3 ? 0.5 * eps : 0.0);
                    const double ux = px.x() + (mode != 1 ? sign * eps * px.y() : 0.0);
                    const double uy = py.x() + (mode != 0 ? sign * eps * py.y() : 0.0);
                    std::vector<HoroPoint> pts = base;
                    pts[static_cast<std::size_t>(k)] = plane_pair(model, ux, uy, t);
                    const HoroPath path = HoroPath::uniform(model, pts, SegmentRule::lead_x);
                    const double len = path_length(path, norm, refinement);
                    w.record(len - straight, [&] {
                        return json{{"waypoint", k}, {"epsilon", eps}, {"mode", modes[mode]}, {"sign", sign},
                                    {"length", len}, {"vertical_length", straight}, {"path", to_json(path)}};
                    });
                }
            }
        }
    }
    r.samples = w.count();
    r.details["vertical_length"] = straight;
    r.details["refinement"] = refinement;
    r.details["interior_waypoints"] = interior;
    conclude(r, w, w.margin() > 0.0);
}

inline void boundary_decomposition(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    if (!model.is_dl()) throw CapabilityError("boundary-decomposition needs a Diestel-Leader model");
    const int top = std::min(7, c.cfg.exhaustive.value_or(7));
    if (top < 5) throw ParameterError("boundary-decomposition needs a top radius of at least 5");
    std::vector<TurnProfile> profiles;
    for (int rad : {3, 5, top}) profiles.push_back(geodesic_turn_profile(model.x.branching, model.y.branching, rad));
    const int v3 = profiles[0].max_turns;
    const int v5 = profiles[1].max_turns;
    const int v7 = profiles[2].max_turns;
    // regression values from the first certified run
    std::optional<int> golden;
    if (model.x.branching <= 3 && model.y.branching <= 3) golden = 2;
    json rows = json::array();
    for (const auto& p : profiles)
        rows.push_back(json{{"radius", p.radius}, {"max_turns", p.max_turns}, {"targets", p.targets}, {"interval_vertices", p.geodesic_vertices}});
    r.details["radii"] = std::move(rows);
    r.details["measure"] = "max direction changes over geodesics from o";
    r.details["golden_max_turns"] = golden ? json(*golden) : json(nullptr);
    r.samples = profiles[0].targets + profiles[1].targets + profiles[2].targets;
    const double margin = std::min({static_cast<double>(v5 - v3), static_cast<double>(v5 - v7),
                                    golden ? -std::fabs(static_cast<double>(v7 - *golden)) : 0.0});
    r.worst_margin = margin;
    r.pass = margin >= 0.0;
    if (!r.pass) {
        r.counterexample = json{{"max_turns", {v3, v5, v7}}};
        if (profiles[2].worst_target) (*r.counterexample)["worst_target"] = to_json(*profiles[2].worst_target);
    }
}

inline void trichotomy(const CheckContext& c, CheckReport& r) {
    (void)c;
    struct Row {
        const char* model;
        Verdict expected;
    };
    const Row rows[] = {{"dl-3-3", Verdict::not_finitely_presented},
                        {"h2-3_bowtie_t-3", Verdict::ascending_hnn},
                        {"sol", Verdict::virtually_semidirect},
                        {"dl-2-2", Verdict::not_finitely_presented},
                        {"h2-2_bowtie_t-2", Verdict::ascending_hnn},
                        {"h2xmf-B(3,1,1,1)-k2", Verdict::ascending_hnn}};
    WorstCase w;
    json out = json::array();
    for (const auto& row : rows) {
        const Model m = parse_model(row.model);
        const ClassificationVerdict v = classify_with_evidence(m);
        bool ok = v.verdict == row.expected;
        std::string probe = "none";
        if (v.probe) {
            probe = probe_verdict_name(v.probe->verdict);
            // obstruction only when X is a tree; connection only when it is not
            const bool expect_obstructed = !v.lower_x_connected;
            ok = ok && (expect_obstructed ? v.probe->verdict == ProbeVerdict::obstructed
                                          : v.probe->verdict == ProbeVerdict::connected_below);
        }
        out.push_back(json{{"model", row.model}, {"verdict", verdict_name(v.verdict)}, {"probe", probe}});
        w.record(ok ? 0.0 : -1.0, [&] { return to_json(v); });
    }
    r.samples = w.count();
    r.details["rows"] = std::move(out);
    conclude(r, w, w.margin() >= 0.0);
}

inline void estimate_delta_check(const CheckContext& c, CheckReport& r) {
    const Factor f = single_factor(c);
    WorstCase w;
    if (f.is_tree()) {
        const DeltaEstimate d = estimate_delta(f, c.samples, 4.0, c.cfg.seed);
        w.record(-d.value, [&] { return json{{"value", d.value}}; });
        r.details["value"] = d.value;
        conclude(r, w, d.value == 0.0);
        return;
    }
    json rows = json::array();
    double prev = 0.0;
    for (double rad : {1.0, 2.0, 4.0}) {
        const DeltaEstimate d = estimate_delta(f, c.samples, rad, c.cfg.seed);
        const double upper = 1.0 / std::log(f.base);  // the curvature -1 value is below 1
        w.record(std::min({d.value - prev, upper - d.value, d.value}), [&] { return json{{"radius", rad}, {"value", d.value}, {"previous", prev}}; });
        rows.push_back(json{{"radius", rad}, {"value", d.value}, {"triangles", d.triangles}});
        prev = d.value;
    }
    r.details["estimates"] = std::move(rows);
    conclude(r, w, w.margin() >= 0.0 && prev > 0.0);
}

inline void path_refinement(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    const AdmissibleNorm& norm = *c.norm;
    numerics::Rng rng = c.rng(11);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const HoroPoint p = random_horo_point(rng, model, 2.0);
        const HoroPoint q = random_horo_point(rng, model, 2.0);
        const HoroPath path = witness_path(model, p, q);
        double prev = 0.0;
        double worst = INFINITY;
        for (int ref = 1; ref <= 512; ref *= 2) {
            const double len = path_length(path, norm, ref);
            worst = std::min(worst, len - prev + 1e-12 * std::max(1.0, len));
            prev = len;
        }
        const double l256 = path_length(path, norm, 256);
        const double cauchy = std::fabs(prev - l256);
        const double margin = std::min(worst, 1e-3 * std::max(1.0, prev) - cauchy);
        w.record(margin, [&] { return json{{"path", to_json(path)}, {"length_512", prev}, {"cauchy_256_512", cauchy}}; });
    }
    conclude(r, w, w.margin() >= 0.0);
}

inline void norm_certificates(const CheckContext& c, CheckReport& r) {
    (void)c;
    struct Case {
        AdmissibleNorm norm;
        bool expect_pass;
        const char* expected_failure;
    };
    const Case cases[] = {
        {AdmissibleNorm::linf(), true, ""},
        {AdmissibleNorm::l1half(), true, ""},
        {AdmissibleNorm::l2norm(), true, ""},
        {AdmissibleNorm::unchecked("third-l1", [](double a, double b) { return (a + b) / 3.0; }), false, "normalized"},
        {AdmissibleNorm::unchecked("0.4-l1", [](double a, double b) { return 0.4 * (a + b); }), false, "admissible"},
    };
    WorstCase w;
    json rows = json::array();
    for (const auto& cs : cases) {
        const NormCertificate cert = cs.norm.certify();
        bool ok = cert.passes() == cs.expect_pass;
        if (!cs.expect_pass) {
            const std::string f = cs.expected_failure;
            ok = ok && ((f == "normalized" && !cert.normalized) || (f == "admissible" && !cert.admissible));
        }
        rows.push_back(json{{"norm", cs.norm.name()},
                            {"normalized", cert.normalized},
                            {"admissible", cert.admissible},
                            {"monotone", cert.monotone},
                            {"homogeneous", cert.homogeneous},
                            {"convex", cert.convex},
                            {"admissibility_margin", cert.admissibility_margin}});
        w.record(ok ? 0.0 : -1.0, [&] { return rows.back(); });
    }
    r.samples = w.count();
    r.details["certificates"] = std::move(rows);
    conclude(r, w, w.margin() >= 0.0);
}

// ---------------------------------------------------------------------------
// groups

inline void height_homomorphism(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    const Model model = g.model();
    const HoroPoint o = g.origin();
    numerics::Rng rng = c.rng(12);
    // height of t.o fixes the unit of the height change on the model
    const double unit = horo_height(model, g.act(g.generators()[0].element, o)) - horo_height(model, o);
    const double slack = model.is_dl() ? 0.0 : 1e-9;
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const auto a = random_word_element(rng, g, 10);
        const auto b = random_word_element(rng, g, 10);
        const auto ab = groups::multiply(a, b);
        const auto additive = groups::height_change(ab) - groups::height_change(a) - groups::height_change(b);
        const HoroPoint p = g.act(ab, o);
        const double shift = horo_height(model, p) - horo_height(model, o);
        const double err = std::fabs(shift - unit * static_cast<double>(groups::height_change(ab)));
        w.record(additive == 0 ? slack - err : -1.0, [&] {
            return json{{"a", groups::to_string(a)}, {"b", groups::to_string(b)}, {"additivity_defect", additive}, {"action_height_error", err}};
        });
    }
    // image: t maps to 1, so the image is all of Z; kernel: the base
    // generators have height change 0 and preserve every height
    const auto gens = g.generators();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto& gen = gens[k];
        const auto expected = k == 0 ? 1 : 0;
        const auto hc = groups::height_change(gen.element);
        w.record(hc == expected ? 0.0 : -1.0, [&] { return json{{"generator", gen.name}, {"height_change", hc}}; });
    }
    r.details["group"] = g.name();
    r.details["height_unit"] = unit;
    conclude(r, w, w.margin() >= 0.0);
}

inline void britton_roundtrip(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    groups::HnnBase base;
    if (g.kind() == groups::GroupKind::baumslag_solitar) base = groups::HnnBase::bs(g.parameter());
    else if (g.kind() == groups::GroupKind::hnn) base = groups::HnnBase::z2(g.matrix());
    else throw CapabilityError("britton-roundtrip needs BS(1,n) or HNN(Z^2,B)");
    numerics::Rng rng = c.rng(13);
    const std::string letters = base.dim() == 2 ? "tTaAbB" : "tTaA";
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        std::string text;
        const auto len = rng.integer(0, 12);
        for (std::int64_t k = 0; k < len; ++k) {
            if (k) text += ' ';
            text += letters[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(letters.size()) - 1))];
        }
        const groups::HNNWord word = groups::parse_word(text, base.dim() == 2);
        const groups::BrittonForm form = groups::britton_reduce(word, base);
        const bool equal = groups::evaluate(word, base) == groups::evaluate(form, base);
        bool reduced = form.x >= 0 && form.y >= 0;
        if (form.x > 0 && form.y > 0) {
            groups::RatVec h;
            for (auto v : form.h) h.emplace_back(v);
            reduced = reduced && !groups::is_integral(groups::mul_inverse(base.f, h));
        }
        w.record(equal && reduced ? 0.0 : -1.0, [&] {
            return json{{"word", text}, {"normal_form", groups::to_string(form)}, {"equal", equal}, {"reduced", reduced}};
        });
    }
    r.details["group"] = g.name();
    conclude(r, w, w.margin() >= 0.0);
}

inline void lamplighter_adjacency(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    if (g.kind() != groups::GroupKind::lamplighter) throw CapabilityError("lamplighter-adjacency needs dl-m-m");
    const Model model = g.model();
    numerics::Rng rng = c.rng(14);
    const DLBall unit(model.x.branching, model.y.branching, 1);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const auto e = random_word_element(rng, g, 12);
        const HoroPoint p = random_horo_point(rng, model, 4.0);
        // a random neighbour: up in X and down in Y, or the reverse
        const auto& px = std::get<TreePoint>(p.x).vertex;
        const auto& py = std::get<TreePoint>(p.y).vertex;
        HoroPoint q;
        if (rng.coin()) q = HoroPoint{TreePoint(tree_parent(px)), TreePoint(tree_child(py, static_cast<int>(rng.integer(0, py.m - 1))))};
        else q = HoroPoint{TreePoint(tree_child(px, static_cast<int>(rng.integer(0, px.m - 1)))), TreePoint(tree_parent(py))};
        const HoroPoint s = random_horo_point(rng, model, 4.0);
        const HoroPoint gp = g.act(e, p);
        const HoroPoint gq = g.act(e, q);
        const HoroPoint gs = g.act(e, s);
        const auto adj = dl_distance(model, gp, gq);
        const auto d0 = dl_distance(model, p, s);
        const auto d1 = dl_distance(model, gp, gs);
        w.record(adj == 1 && d0 == d1 ? 0.0 : -1.0, [&] {
            return json{{"element", groups::to_string(e)}, {"p", to_json(p)}, {"q", to_json(q)}, {"image_distance", adj},
                        {"pair_distance", d0}, {"image_pair_distance", d1}};
        });
    }
    (void)unit;
    conclude(r, w, w.margin() >= 0.0);
}

inline void action_isometry(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    const Model model = g.model();
    const AdmissibleNorm& norm = *c.norm;
    const Budget budget = c.budget();
    numerics::Rng rng = c.rng(15);
    WorstCase w;
    for (int i = 0; i < c.samples; ++i) {
        const auto e = random_word_element(rng, g, 6);
        const HoroPoint p = random_horo_point(rng, model, 2.0);
        const HoroPoint q = random_horo_point(rng, model, 2.0);
        const DistanceEstimate d0 = estimate_distance(model, p, q, norm, budget);
        const DistanceEstimate d1 = estimate_distance(model, g.act(e, p), g.act(e, q), norm, budget);
        const double err = std::max(std::fabs(d0.hi - d1.hi), std::fabs(d0.lo - d1.lo));
        w.record(2.0 * c.tol * std::max(1.0, d0.hi) - err, [&] {
            json j = pair_json(p, q);
            j["element"] = groups::to_string(e);
            j["before"] = to_json(d0);
            j["after"] = to_json(d1);
            return j;
        });
    }
    r.details["group"] = g.name();
    if (!model.is_dl()) r.details["budget"] = to_json(budget);
    conclude(r, w, w.margin() >= 0.0);
}

inline void bass_serre_loop(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    const int rad = c.cfg.exhaustive.value_or(6);
    std::optional<groups::CosetTree> tree;
    if (g.kind() == groups::GroupKind::baumslag_solitar) tree.emplace(groups::IntMat::scalar(g.parameter()));
    else if (g.kind() == groups::GroupKind::hnn) tree.emplace(g.matrix());
    else throw CapabilityError("bass-serre-loop needs BS(1,n) or HNN(Z^2,B)");
    const TreeVertex root = TreeVertex::root(tree->branching());
    const TreeVertex top = tree_parent(root);
    WorstCase w;
    for (const auto& [v, dist] : tree_bfs_ball(root, rad)) {
        // (-B^h z, h) sends the coset z + B^{-h} Z^d at height h to the root
        const groups::RatVec shift = groups::negate(groups::mul_power(tree->matrix(), v.h, tree->value(v)));
        const TreeVertex image = tree->act(v.h, shift, v);
        const TreeVertex image_parent = tree->act(v.h, shift, tree_parent(v));
        const bool ok = image == root && image_parent == top;
        w.record(ok ? 0.0 : -1.0, [&] { return json{{"vertex", to_json(v)}, {"image", to_json(image)}, {"distance", dist}}; });
    }
    r.samples = w.count();
    r.details["group"] = g.name();
    r.details["radius"] = rad;
    r.details["vertex_orbits"] = 1;
    r.details["edge_orbits"] = 1;
    conclude(r, w, w.margin() >= 0.0);
}

inline void dymarz_roundtrip(const CheckContext& c, CheckReport& r) {
    const Model model = product_model(c);
    if (!model.x.is_heintze() || !model.y.is_millefeuille()) throw CapabilityError("dymarz-roundtrip needs H²_a ⋈ H²_b[k]");
    const DymarzSpace space{model.x.base, model.y.base, model.y.branching};
    const AdmissibleNorm& norm = *c.norm;
    numerics::Rng rng = c.rng(16);
    WorstCase w;
    auto fibered = [&](const TreePoint& v) {
        return FiberedPoint{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), -v.height(), v};
    };
    for (int i = 0; i < c.samples; ++i) {
        const auto h = rng.integer(-3, 3);
        const TreePoint v(random_tree_vertex(rng, space.k, h, 4), rng.uniform01() * 0.999);
        const FiberedPoint f = fibered(v);
        const FiberedPoint back = dymarz_inverse(space, dymarz_map(space, f));
        w.record(back == f ? 0.0 : -1.0, [&] { return json{{"n1", f.n1}, {"n2", f.n2}, {"t", f.t}, {"v", to_json(f.v)}}; });
    }
    constexpr int refinement = 256;
    const int polylines = std::max(1, c.samples / 20);
    double worst_diff = 0.0;
    for (int i = 0; i < polylines; ++i) {
        // sheets on one vertical line keep every segment admissible
        const TreePoint anchor(random_tree_vertex(rng, space.k, 3, 4));
        const DownSeed down{rng.next() | 1};
        std::vector<HoroPoint> pts;
        for (int k = 0; k < 4; ++k) {
            const double t = rng.uniform(-2.0, 2.0);
            const TreePoint v = tree_point_on_line(anchor, -t, down);
            pts.push_back(dymarz_map(space, FiberedPoint{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), -v.height(), v}));
        }
        const HoroPath path = HoroPath::uniform(model, pts, SegmentRule::lead_x);
        const double direct = path_length(path, norm, refinement);
        double fibered_len = 0.0;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            std::vector<FiberedPoint> samples;
            for (const auto& s : segment_samples(model, pts[k], pts[k + 1], path.rules[k], refinement))
                samples.push_back(dymarz_inverse(space, s));
            fibered_len += fibered_chord_length(space, samples, norm);
        }
        const double diff = std::fabs(direct - fibered_len);
        worst_diff = std::max(worst_diff, diff);
        w.record(c.tol - diff, [&] { return json{{"path", to_json(path)}, {"direct", direct}, {"fibered", fibered_len}}; });
    }
    r.samples = w.count();
    r.details["round_trip_points"] = c.samples;
    r.details["polylines"] = polylines;
    r.details["refinement"] = refinement;
    r.details["max_length_difference"] = worst_diff;
    conclude(r, w, w.margin() >= 0.0);
}

inline void orbit_quasi_isometry(const CheckContext& c, CheckReport& r) {
    const groups::Group g = model_group(c);
    const int radius = c.cfg.exhaustive.value_or(3);
    const groups::OrbitFit fit = groups::orbit_qi_constants(g, radius, *c.norm, c.budget());
    r.samples = static_cast<long>(fit.ball_size);
    r.details["group"] = g.name();
    r.details["L"] = fit.L;
    r.details["C"] = fit.C;
    r.details["radius"] = radius;
    r.details["max_distance"] = fit.max_distance;
    // any action by isometries has finite constants on a finite ball; the
    // check guards against degenerate fits
    r.worst_margin = std::isfinite(fit.L) && std::isfinite(fit.C) ? 0.0 : -1.0;
    r.pass = r.worst_margin >= 0.0 && fit.L >= 1.0 && fit.C >= 0.0;
    if (!r.pass) r.counterexample = json{{"L", fit.L}, {"C", fit.C}};
}

}  // namespace checks

inline const std::vector<CheckSpec>& registry() {
    static const std::vector<CheckSpec> specs = {
        {"distance-upper-bound", "d(p,q) <= d_X + d_Y + min(d_X, d_Y), with the three-leg witness path no longer than that",
         "dl-2-2", "l2norm", 40, 1e-6, checks::distance_upper_bound},
        {"almost-vertical", "if d(p,q) <= h(p) - h(q) + C then p is within acosh(e^{C/2}) of the vertical ray up from q",
         "h2-e", "", 500, 1e-6, checks::almost_vertical},
        {"d-prime-sandwich", "the height-weighted path metric d' never exceeds d_X, with equality on vertical pairs",
         "h2-2", "l2norm", 200, 1e-6, checks::d_prime_sandwich},
        {"height-variation", "a geodesic of length l varies in height by at least l - 4 delta",
         "h2-e", "", 200, 1e-9, checks::height_variation},
        {"unique-vertical-geodesic", "between opposite boundary points the vertical geodesic of X ⋈ Y is the only geodesic",
         "h2-2_bowtie_h2-2", "linf", 72, 0.0, checks::unique_vertical_geodesic},
        {"vertical-convergence", "vertical rays at the same height approach each other as the height grows",
         "h2-e", "", 200, 1e-10, checks::vertical_convergence},
        {"busemann-convexity", "d(mid[x1,x2], mid[x3,x4]) <= (d(x1,x3) + d(x2,x4)) / 2",
         "h2-e", "", 1000, 1e-10, checks::busemann_convexity},
        {"boundary-decomposition", "geodesics in DL(m,n) are concatenations of boundedly many vertical segments",
         "dl-2-2", "", 0, 0.0, checks::boundary_decomposition},
        {"dl-exact", "the closed DL distance formula agrees with breadth-first search",
         "dl-2-2", "", 0, 0.0, checks::dl_exact},
        {"estimate-gap", "the certified distance interval is at most 35% of its upper end",
         "h2-2_bowtie_t-2", "l2norm", 20, 1e-6, checks::estimate_gap},
        {"right-triangle", "cosh(hypotenuse) = cosh(a) cosh(b) for right triangles with legs a, b",
         "", "", 1000, 1e-9, checks::right_triangle_check},
        {"height-lipschitz", "|h(p) - h(q)| <= d(p, q)", "h2-e", "", 1000, 1e-12, checks::height_lipschitz},
        {"limit-formula", "h(p) = h(ray(0)) + lim (t - d(p, ray(t))) along a vertical ray",
         "h2-e", "", 500, 1e-6, checks::limit_formula},
        {"norm-certificates", "admissible norms satisfy N(1,1) = 1, N >= (a+b)/2 and monotonicity",
         "", "", 0, 0.0, checks::norm_certificates},
        {"path-refinement", "chord sums grow along nested refinements and settle",
         "h2-2_bowtie_t-2", "l2norm", 30, 0.0, checks::path_refinement},
        {"thin-triangles", "trees are 0-hyperbolic; the plane's thinness estimate grows with the radius and stays below 1",
         "h2-e", "", 60, 0.0, checks::estimate_delta_check},
        {"trichotomy", "boundary connectivity of the two factors decides the group-theoretic verdict; probes agree",
         "", "", 0, 0.0, checks::trichotomy},
        {"height-homomorphism", "the height change is a homomorphism onto Z realized by the action",
         "dl-2-2", "", 1000, 0.0, checks::height_homomorphism},
        {"britton-roundtrip", "every word equals its Britton normal form t^-x h t^y",
         "h2-2_bowtie_t-2", "", 1000, 0.0, checks::britton_roundtrip},
        {"lamplighter-adjacency", "the lamplighter acts on DL(m,m) by graph automorphisms",
         "dl-2-2", "", 1000, 0.0, checks::lamplighter_adjacency},
        {"action-isometry", "the group acts by isometries of d_⋈", "h2-2_bowtie_t-2", "l2norm", 20, 1e-6, checks::action_isometry},
        {"bass-serre-loop", "the group acts on its Bass-Serre tree with one vertex orbit and one edge orbit",
         "h2-2_bowtie_t-2", "", 0, 0.0, checks::bass_serre_loop},
        {"dymarz-roundtrip", "the change of decomposition is a bijection that preserves path lengths",
         "h2-2_bowtie_h2-2[2]", "l2norm", 1000, 1e-6, checks::dymarz_roundtrip},
        {"orbit-qi", "the orbit map of the Cayley ball is a quasi-isometric embedding with finite constants",
         "h2-2_bowtie_t-2", "l2norm", 0, 0.0, checks::orbit_quasi_isometry},
    };
    return specs;
}

inline const CheckSpec* find_check(std::string_view id) {
    for (const auto& s : registry())
        if (s.id == id) return &s;
    return nullptr;
}

inline std::vector<std::string> check_ids() {
    std::vector<std::string> ids;
    for (const auto& s : registry()) ids.push_back(s.id);
    return ids;
}

class UnknownCheckError : public Error {
public:
    explicit UnknownCheckError(const std::string& id) : Error("unknown check '" + id + "'") {}
};

/// Runs a registered check. Unknown ids raise UnknownCheckError; unsupported
/// model/check combinations raise CapabilityError.
inline CheckReport run_check(std::string_view id, const CheckConfig& cfg) {
    const CheckSpec* spec = find_check(id);
    if (!spec) throw UnknownCheckError(std::string(id));
    CheckContext ctx;
    ctx.cfg = cfg;
    ctx.model_text = cfg.model.value_or(spec->default_model);
    if (spec->default_model.empty() && cfg.model) throw CapabilityError("check '" + spec->id + "' takes no model");
    if (!spec->default_norm.empty()) ctx.norm = AdmissibleNorm::from_name(cfg.norm.value_or(spec->default_norm));
    ctx.samples = cfg.samples.value_or(spec->default_samples);
    if (ctx.samples < 0) throw ParameterError("samples must be non-negative");
    if (ctx.samples > 1000000) throw ResourceError("samples above 10^6");
    ctx.tol = cfg.tol.value_or(spec->default_tol);
    if (!(ctx.tol >= 0.0) || !std::isfinite(ctx.tol)) throw ParameterError("tolerance must be finite and non-negative");

    CheckReport r;
    r.check = spec->id;
    r.anchor = spec->anchor;
    r.model = ctx.model_text;
    if (ctx.norm) r.norm = ctx.norm->name();
    r.samples = ctx.samples;
    r.seed = cfg.seed;
    r.tolerance = ctx.tol;
    spec->run(ctx, r);
    if (!std::isfinite(r.worst_margin)) throw Error("check produced a non-finite margin");
    if (!r.pass && !r.counterexample) r.counterexample = json{{"note", "failure without a recorded configuration"}};
    return r;
}

}  // namespace horoprod::lab
