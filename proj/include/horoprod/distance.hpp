#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "norm.hpp"
#include "numerics.hpp"
#include "path.hpp"

namespace horoprod {

// ---------------------------------------------------------------------------
// Closed-form bounds.

/// d_X + d_Y + min(d_X, d_Y).
inline double upper_bound_distance(const Model& model, const HoroPoint& p, const HoroPoint& q) {
    const double dx = dist_x(model, p, q);
    const double dy = dist_y(model, p, q);
    return dx + dy + std::min(dx, dy);
}

/// max((d_X+d_Y)/2, d_X N(1,0), d_Y N(0,1), |Δh|). Every chord sum of a path
/// from p to q dominates each term, by the triangle inequality in the factors
/// together with admissibility and monotonicity of N.
inline double lower_bound_distance(const Model& model, const HoroPoint& p, const HoroPoint& q, const AdmissibleNorm& norm) {
    const double dx = dist_x(model, p, q);
    const double dy = dist_y(model, p, q);
    const double dh = std::fabs(horo_height(model, p) - horo_height(model, q));
    return std::max({0.5 * (dx + dy), dx * norm(1.0, 0.0), dy * norm(0.0, 1.0), dh});
}

/// Length the X projection of any path from p to q must have. When the Y
/// coordinates sit on different branches, the Y projection passes through
/// their meet, which pins X at height -H on the way.
inline double forced_x_length(const Model& model, const HoroPoint& p, const HoroPoint& q) {
    const double dx = dist_x(model, p, q);
    if (!model.x.is_heintze() || model.y.is_heintze()) return dx;
    const bool tree = model.y.is_tree();
    const TreePoint& a = tree ? std::get<TreePoint>(p.y) : std::get<MfPoint>(p.y).sheet;
    const TreePoint& b = tree ? std::get<TreePoint>(q.y) : std::get<MfPoint>(q.y).sheet;
    if (tree_points_comparable(a, b)) return dx;
    const double T = -(tree ? model.y.edge_length : 1.0) * tree_point_meet_height(a, b);
    const auto& xp = std::get<HPoint>(p.x);
    const auto& xq = std::get<HPoint>(q.x);
    if (T >= std::min(xp.height(), xq.height())) return dx;
    return std::max(dx, horocycle_detour(xp, xq, T).value);
}

/// N(l_X, l_Y) with the forced X length; a chord sum of a path dominates it
/// by the triangle inequality for N plus monotonicity. Falls back to
/// lower_bound_distance for uncertified norms.
inline double detour_lower_bound(const Model& model, const HoroPoint& p, const HoroPoint& q, const AdmissibleNorm& norm) {
    const double base = lower_bound_distance(model, p, q, norm);
    if (!norm.certified()) return base;
    const double v = norm(forced_x_length(model, p, q), dist_y(model, p, q));
    // the detour minimum comes from a numerical scan; leave it a little slack
    return std::max(base, v * (1.0 - 1e-10));
}

/// Point on the vertical line through `from` (in factor f) at metric height h.
inline FactorPoint vertical_point(const Factor& f, const FactorPoint& from, double h) {
    switch (f.kind) {
        case FactorKind::tree: return tree_point_on_line(std::get<TreePoint>(from), h / f.edge_length);
        case FactorKind::heintze: return HPoint::at_height(std::get<HPoint>(from).x(), h, f.base);
        case FactorKind::millefeuille: {
            const auto& m = std::get<MfPoint>(from);
            return MfPoint(HPoint::at_height(m.plane.x(), h, f.base), tree_point_on_line(m.sheet, h));
        }
    }
    return from;
}

/// Three-leg path behind the upper bound: the factor with the smaller
/// distance moves first along its geodesic while the other rides its vertical
/// line, then the roles swap. (The middle vertical leg has length zero.)
inline HoroPath witness_path(const Model& model, const HoroPoint& p, const HoroPoint& q) {
    if (p == q) return HoroPath(model, {p}, {});
    const double dx = dist_x(model, p, q);
    const double dy = dist_y(model, p, q);
    HoroPoint mid;
    SegmentRule first;
    SegmentRule second;
    if (dx <= dy) {
        const double h = factor_height(model.x, q.x);
        mid = HoroPoint{q.x, vertical_point(model.y, p.y, -h)};
        first = SegmentRule::lead_x;
        second = SegmentRule::lead_y;
    } else {
        const double h = factor_height(model.y, q.y);
        mid = HoroPoint{vertical_point(model.x, p.x, -h), q.y};
        first = SegmentRule::lead_y;
        second = SegmentRule::lead_x;
    }
    std::vector<HoroPoint> pts{p};
    std::vector<SegmentRule> rules;
    if (!(mid == p)) {
        pts.push_back(mid);
        rules.push_back(first);
    }
    if (!(mid == q)) {
        pts.push_back(q);
        rules.push_back(second);
    }
    return HoroPath(model, std::move(pts), std::move(rules));
}

struct UpperBoundWitness {
    double bound = 0.0;
    double witness_length = 0.0;
    HoroPath witness;
};

inline UpperBoundWitness upper_bound_with_witness(const Model& model, const HoroPoint& p, const HoroPoint& q,
                                                  const AdmissibleNorm& norm, int refinement = 64) {
    UpperBoundWitness w;
    w.bound = upper_bound_distance(model, p, q);
    w.witness = witness_path(model, p, q);
    w.witness_length = path_length(w.witness, norm, refinement);
    return w;
}

// ---------------------------------------------------------------------------
// Diestel-Leader graphs.

/// Graph distance in DL(m,n): d_1 + d_2 - |h_1 - h_2|. Validated against BFS
/// in dl_graph.hpp and the test suite.
inline std::int64_t dl_distance(const Model& model, const HoroPoint& p, const HoroPoint& q) {
    if (!model.is_dl()) throw ModelError("dl_distance needs a Diestel-Leader model");
    const auto& px = std::get<TreePoint>(p.x);
    const auto& py = std::get<TreePoint>(p.y);
    const auto& qx = std::get<TreePoint>(q.x);
    const auto& qy = std::get<TreePoint>(q.y);
    if (!px.is_vertex() || !py.is_vertex() || !qx.is_vertex() || !qy.is_vertex())
        throw StructureError("dl_distance needs graph vertices (zero edge offsets)");
    const std::int64_t d1 = tree_distance(px.vertex, qx.vertex);
    const std::int64_t d2 = tree_distance(py.vertex, qy.vertex);
    const std::int64_t dh = px.vertex.h - qx.vertex.h;
    return d1 + d2 - (dh < 0 ? -dh : dh);
}

// ---------------------------------------------------------------------------
// Waypoint optimizer.

struct Budget {
    int waypoints = 8;
    int restarts = 3;
    int sweeps = 4;
    int line_evals = 24;
    int refinement = 16;
    int final_refinement = 64;
    std::uint64_t seed = 0;
    double tol = 1e-6;

    /// Reduced budget for bulk runs.
    static Budget fast() {
        Budget b;
        b.waypoints = 4;
        b.restarts = 2;
        b.sweeps = 2;
        b.line_evals = 14;
        b.refinement = 8;
        b.final_refinement = 32;
        return b;
    }
};

struct DistanceEstimate {
    double lo = 0.0;
    double hi = 0.0;
    bool exact = false;
    bool converged = true;
    bool clamped = false;  // the best path undercut lo by more than rounding
    std::string method;
    Budget budget;
    long evaluations = 0;
};

namespace detail {

// Waypoints live in a frame normalized at the start point p: an X point
// (xi, tau) is the plane point (xi, a^tau) after the isometry that sends p's
// X coordinate to (0, 1); Y points (eta, -tau) likewise in their own frame.
// The frame is equivariant under the group actions (affine maps of the
// planes), so estimates of translated pairs agree to rounding.
struct Node {
    double xi = 0.0;
    double eta = 0.0;
    double tau = 0.0;
};

inline double plane_dist(double x1, double y1, double x2, double y2, double inv_log_base) {
    return unit_curvature_distance(x1, y1, x2, y2) * inv_log_base;
}

class WaypointProblem {
public:
    // Y is either a plane of base b (plane_y) or a pure height coordinate
    // (trees on a line, or the vertical line used by d').
    WaypointProblem(double a, bool plane_y, double b, std::optional<double> dip, Node target, const AdmissibleNorm& norm)
        : la_(std::log(a)), lb_(plane_y ? std::log(b) : 1.0), plane_y_(plane_y), dip_(dip), q_(target), norm_(norm) {}

    bool plane_y() const noexcept { return plane_y_; }
    const std::optional<double>& dip() const noexcept { return dip_; }
    const Node& target() const noexcept { return q_; }
    double log_a() const noexcept { return la_; }
    double log_b() const noexcept { return lb_; }

    /// Chord sum of the lead_x polyline through nodes (endpoints included).
    double length(const std::vector<Node>& n, int pieces) const {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n.size(); ++i) total += segment(n[i], n[i + 1], pieces);
        return total;
    }

    double segment(const Node& A, const Node& B, int pieces) const {
        const double ya = std::exp(A.tau * la_);
        const double yb = std::exp(B.tau * la_);
        double total = 0.0;
        if (A.xi == B.xi && A.tau == B.tau) {
            if (!plane_y_ || A.eta == B.eta) return 0.0;
            const double yy = std::exp(-A.tau * lb_);
            const double step = plane_dist(0.0, yy, (B.eta - A.eta) / pieces, yy, 1.0 / lb_);
            return pieces * norm_(0.0, step);
        }
        const SegmentFrame f = segment_frame(A.xi, ya, B.xi, yb, std::exp(la_));
        const bool vertical = f.geodesic.kind == HGeodesic::Kind::vertical_line;
        const double dx = std::fabs(f.u1 - f.u0) / la_ / pieces;
        const double lc0 = vertical ? 0.0 : log_cosh(f.u0);
        double prev_tau = A.tau;
        double prev_eta = A.eta;
        for (int j = 1; j <= pieces; ++j) {
            double tau;
            if (j == pieces) {
                tau = B.tau;
            } else {
                const double u = f.u0 + (f.u1 - f.u0) * (static_cast<double>(j) / pieces);
                tau = vertical ? A.tau + (u - f.u0) / la_ : A.tau + (lc0 - log_cosh(u)) / la_;
            }
            double dy;
            if (plane_y_) {
                const double eta = j == pieces ? B.eta : A.eta + (B.eta - A.eta) * (static_cast<double>(j) / pieces);
                dy = plane_dist(prev_eta, std::exp(-prev_tau * lb_), eta, std::exp(-tau * lb_), 1.0 / lb_);
                prev_eta = eta;
            } else {
                dy = std::fabs(tau - prev_tau);
            }
            total += norm_(dx, dy);
            prev_tau = tau;
        }
        return total;
    }

private:
    double la_;
    double lb_;
    bool plane_y_;
    std::optional<double> dip_;
    Node q_;
    const AdmissibleNorm& norm_;
};

/// Parameter vector <-> interior nodes. The dip node's height is
/// dip - |param| so the meet constraint always holds.
struct Layout {
    int interior = 0;
    int per_node = 2;
    int dip_index = -1;

    std::vector<Node> nodes(const std::vector<double>& params, const Node& q, const std::optional<double>& dip) const {
        std::vector<Node> n;
        n.reserve(static_cast<std::size_t>(interior) + 2);
        n.push_back(Node{});
        for (int i = 0; i < interior; ++i) {
            const double* p = &params[static_cast<std::size_t>(i * per_node)];
            Node v;
            v.xi = p[0];
            v.tau = (i == dip_index && dip) ? *dip - std::fabs(p[1]) : p[1];
            v.eta = per_node == 3 ? p[2] : 0.0;
            n.push_back(v);
        }
        n.push_back(q);
        return n;
    }

    std::vector<double> params(const std::vector<Node>& n, const std::optional<double>& dip) const {
        std::vector<double> out(static_cast<std::size_t>(interior * per_node));
        for (int i = 0; i < interior; ++i) {
            const Node& v = n[static_cast<std::size_t>(i) + 1];
            double* p = &out[static_cast<std::size_t>(i * per_node)];
            p[0] = v.xi;
            p[1] = (i == dip_index && dip) ? std::max(0.0, *dip - v.tau) : v.tau;
            if (per_node == 3) p[2] = v.eta;
        }
        return out;
    }
};

/// Resample a polyline of nodes (piecewise linear in node coordinates) at
/// `count` interior positions evenly spread by node index.
inline std::vector<Node> resample(const std::vector<Node>& poly, int count) {
    std::vector<Node> out;
    out.push_back(poly.front());
    const double span = static_cast<double>(poly.size() - 1);
    for (int i = 1; i <= count; ++i) {
        const double s = span * i / (count + 1);
        const auto k = std::min(static_cast<std::size_t>(s), poly.size() - 2);
        const double f = s - static_cast<double>(k);
        const Node& a = poly[k];
        const Node& b = poly[k + 1];
        out.push_back(Node{a.xi + f * (b.xi - a.xi), a.eta + f * (b.eta - a.eta), a.tau + f * (b.tau - a.tau)});
    }
    out.push_back(poly.back());
    return out;
}

/// Points along the plane geodesic from (x0, y0) to (x1, y1) at fractions
/// j/(count+1), returned as (x, height) pairs.
inline std::vector<std::pair<double, double>> geodesic_samples(double x0, double h0, double x1, double h1, double base, int count) {
    std::vector<std::pair<double, double>> out;
    const HPoint a = HPoint::at_height(x0, h0, base);
    const HPoint b = HPoint::at_height(x1, h1, base);
    for (int j = 1; j <= count; ++j) {
        if (a == b) {
            out.emplace_back(x0, h0);
            continue;
        }
        const HPoint z = h_geodesic_between(a, b).at_fraction(static_cast<double>(j) / (count + 1));
        out.emplace_back(z.x(), z.height());
    }
    return out;
}

struct OptimizerResult {
    std::vector<Node> best;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<std::vector<Node>> snapshots;  // best of each (restart, sweep)
    long evaluations = 0;
    bool converged = true;
};

/// Starting configurations in a fixed order: dip-straight, X-leads-first,
/// Y-leads-first, then seeded perturbations of the best found so far.
inline std::vector<Node> start_configuration(const WaypointProblem& prob, int which, int interior,
                                             const std::vector<Node>& best_so_far, numerics::Rng& rng) {
    const Node q = prob.target();
    const std::optional<double>& dip = prob.dip();
    const double a = std::exp(prob.log_a());
    std::vector<Node> poly;
    auto dip_tau = [&](double t) { return dip ? std::min(t, *dip) : t; };
    switch (which) {
        case 0: {  // X geodesic through a dip point, Y interpolated
            const double mid_tau = dip_tau(0.5 * q.tau);
            poly.push_back(Node{});
            const int half = std::max(1, interior / 2);
            for (auto [x, h] : geodesic_samples(0.0, 0.0, 0.5 * q.xi, mid_tau, a, half - 1))
                poly.push_back(Node{x, 0.0, h});
            poly.push_back(Node{0.5 * q.xi, 0.5 * q.eta, mid_tau});
            for (auto [x, h] : geodesic_samples(0.5 * q.xi, mid_tau, q.xi, q.tau, a, interior - half))
                poly.push_back(Node{x, 0.0, h});
            poly.push_back(q);
            for (std::size_t i = 1; i + 1 < poly.size(); ++i)
                poly[i].eta = q.eta * static_cast<double>(i) / static_cast<double>(poly.size() - 1);
            if (static_cast<int>(poly.size()) == interior + 2) return poly;
            return resample(poly, interior);
        }
        case 1:
        case 2: {
            // Witness-like: one factor travels its geodesic while the other
            // stays on its vertical line, then the other catches up.
            const bool x_first = which == 1;
            const int half = std::max(1, interior / 2);
            poly.push_back(Node{});
            if (x_first) {
                for (auto [x, h] : geodesic_samples(0.0, 0.0, q.xi, q.tau, a, half)) poly.push_back(Node{x, 0.0, h});
                Node corner{q.xi, 0.0, q.tau};
                poly.push_back(corner);
                const int rest = interior - half;
                if (prob.plane_y()) {
                    const double b = std::exp(prob.log_b());
                    for (auto [w, hy] : geodesic_samples(0.0, -q.tau, q.eta, -q.tau, b, rest)) poly.push_back(Node{q.xi, w, -hy});
                } else {
                    const double low = dip_tau(q.tau);
                    for (int j = 1; j <= rest; ++j) {
                        const double f = static_cast<double>(j) / (rest + 1);
                        const double t = f <= 0.5 ? q.tau + (low - q.tau) * 2 * f : low + (q.tau - low) * (2 * f - 1);
                        poly.push_back(Node{q.xi, 0.0, t});
                    }
                }
            } else {
                if (prob.plane_y()) {
                    const double b = std::exp(prob.log_b());
                    for (auto [w, hy] : geodesic_samples(0.0, 0.0, q.eta, -q.tau, b, half)) poly.push_back(Node{0.0, w, -hy});
                } else {
                    const double low = dip_tau(std::min(0.0, q.tau));
                    for (int j = 1; j <= half; ++j) {
                        const double f = static_cast<double>(j) / (half + 1);
                        const double t = f <= 0.5 ? low * 2 * f : low + (q.tau - low) * (2 * f - 1);
                        poly.push_back(Node{0.0, 0.0, t});
                    }
                }
                poly.push_back(Node{0.0, q.eta, q.tau});
                for (auto [x, h] : geodesic_samples(0.0, q.tau, q.xi, q.tau, a, interior - half))
                    poly.push_back(Node{x, q.eta, h});
            }
            poly.push_back(q);
            return resample(poly, interior);
        }
        default: {
            std::vector<Node> n = best_so_far;
            for (std::size_t i = 1; i + 1 < n.size(); ++i) {
                const double scale_x = std::exp(n[i].tau * prob.log_a());
                n[i].xi += rng.uniform(-0.5, 0.5) * scale_x;
                n[i].tau += rng.uniform(-0.5, 0.5);
                if (prob.plane_y()) n[i].eta += rng.uniform(-0.5, 0.5) * std::exp(-n[i].tau * prob.log_b());
            }
            return n;
        }
    }
}

inline OptimizerResult optimize_waypoints(const WaypointProblem& prob, const Budget& budget) {
    OptimizerResult res;
    const int interior = std::max(1, budget.waypoints);
    Layout layout;
    layout.interior = interior;
    layout.per_node = prob.plane_y() ? 3 : 2;
    layout.dip_index = prob.dip() ? interior / 2 : -1;
    numerics::Rng rng(numerics::derive_seed(budget.seed, 0x6f7074));

    auto eval = [&](const std::vector<double>& params) {
        ++res.evaluations;
        return prob.length(layout.nodes(params, prob.target(), prob.dip()), budget.refinement);
    };

    std::vector<Node> best_nodes;
    for (int r = 0; r < std::max(1, budget.restarts); ++r) {
        std::vector<Node> start = start_configuration(prob, r, interior, best_nodes.empty() ? resample({Node{}, prob.target()}, interior) : best_nodes, rng);
        // Make the dip node satisfy the constraint in the start.
        if (prob.dip() && layout.dip_index >= 0) {
            Node& d = start[static_cast<std::size_t>(layout.dip_index) + 1];
            d.tau = std::min(d.tau, *prob.dip());
        }
        std::vector<double> params = layout.params(start, prob.dip());
        double value = eval(params);
        double shrink = 1.0;
        for (int sweep = 0; sweep < budget.sweeps; ++sweep) {
            const double before = value;
            const std::vector<Node> cur = layout.nodes(params, prob.target(), prob.dip());
            for (int i = 0; i < interior; ++i) {
                const Node& prev = cur[static_cast<std::size_t>(i)];
                const Node& here = cur[static_cast<std::size_t>(i) + 1];
                const Node& next = cur[static_cast<std::size_t>(i) + 2];
                const double sx = shrink * 0.5 * std::max(std::exp(here.tau * prob.log_a()), std::fabs(next.xi - prev.xi));
                const double st = shrink * 0.5 * std::max(1.0, std::fabs(next.tau - prev.tau));
                const double se = prob.plane_y() ? shrink * 0.5 * std::max(std::exp(-here.tau * prob.log_b()), std::fabs(next.eta - prev.eta)) : 0.0;
                for (int c = 0; c < layout.per_node; ++c) {
                    const std::size_t k = static_cast<std::size_t>(i * layout.per_node + c);
                    const double step = c == 0 ? sx : (c == 1 ? st : se);
                    if (!(step > 0.0) || !std::isfinite(step)) continue;
                    const double centre = params[k];
                    auto line = [&](double v) {
                        std::vector<double> trial = params;
                        trial[k] = v;
                        return eval(trial);
                    };
                    const auto m = numerics::golden_section(line, centre - step, centre + step, 1e-12 * (1.0 + std::fabs(centre)), budget.line_evals);
                    if (m.value < value) {
                        value = m.value;
                        params[k] = m.argmin;
                    }
                }
            }
            shrink *= 0.5;
            res.snapshots.push_back(layout.nodes(params, prob.target(), prob.dip()));
            if (sweep + 1 == budget.sweeps && before - value > budget.tol * std::max(1.0, value)) res.converged = false;
        }
        if (value < res.best_value) {
            res.best_value = value;
            best_nodes = layout.nodes(params, prob.target(), prob.dip());
            res.best = best_nodes;
        }
    }
    return res;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mapping between model points and normalized nodes.

namespace detail {

struct Frame {
    double ux = 0.0, sx = 1.0;  // X plane: u = ux + xi * sx
    double uy = 0.0, sy = 1.0;  // Y plane
    double t0 = 0.0;            // height of the start point
};

inline Frame frame_at(const Model& model, const HoroPoint& p) {
    Frame f;
    const auto& x = std::get<HPoint>(p.x);
    f.ux = x.x();
    f.sx = x.y();
    f.t0 = x.height();
    if (model.y.is_heintze()) {
        const auto& y = std::get<HPoint>(p.y);
        f.uy = y.x();
        f.sy = y.y();
    } else if (model.y.is_millefeuille()) {
        const auto& y = std::get<MfPoint>(p.y);
        f.uy = y.plane.x();
        f.sy = y.plane.y();
    }
    return f;
}

inline Node to_node(const Model& model, const Frame& f, const HoroPoint& q) {
    Node n;
    const auto& x = std::get<HPoint>(q.x);
    n.xi = (x.x() - f.ux) / f.sx;
    n.tau = x.height() - f.t0;
    if (!model.y.is_tree()) n.eta = (factor_horizontal(q.y) - f.uy) / f.sy;
    return n;
}

/// Tree coordinate meet requirement, expressed as a bound on the relative X
/// height tau of some waypoint.
inline std::optional<double> dip_requirement(const Model& model, const Frame& f, const HoroPoint& p, const HoroPoint& q) {
    if (model.y.is_tree()) {
        const auto& a = std::get<TreePoint>(p.y);
        const auto& b = std::get<TreePoint>(q.y);
        if (tree_points_comparable(a, b)) return std::nullopt;
        return -model.y.edge_length * tree_point_meet_height(a, b) - f.t0;
    }
    if (model.y.is_millefeuille()) {
        const auto& a = std::get<MfPoint>(p.y).sheet;
        const auto& b = std::get<MfPoint>(q.y).sheet;
        if (tree_points_comparable(a, b)) return std::nullopt;
        return -tree_point_meet_height(a, b) - f.t0;
    }
    return std::nullopt;
}

/// Rebuild a model path from normalized nodes; tree coordinates follow the
/// vertical line of p before the dip node and that of q after it.
inline HoroPath nodes_to_path(const Model& model, const Frame& f, const HoroPoint& p, const HoroPoint& q,
                              const std::vector<Node>& nodes, int dip_node) {
    std::vector<HoroPoint> pts;
    pts.reserve(nodes.size());
    pts.push_back(p);
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const double h = f.t0 + n.tau;
        FactorPoint x = HPoint::at_height(f.ux + n.xi * f.sx, h, model.x.base);
        const bool after = dip_node >= 0 ? static_cast<int>(i) > dip_node : false;
        FactorPoint y;
        if (model.y.is_heintze()) {
            y = HPoint::at_height(f.uy + n.eta * f.sy, -h, model.y.base);
        } else {
            const bool tree = model.y.is_tree();
            const TreePoint& a = tree ? std::get<TreePoint>(p.y) : std::get<MfPoint>(p.y).sheet;
            const TreePoint& b = tree ? std::get<TreePoint>(q.y) : std::get<MfPoint>(q.y).sheet;
            const TreePoint& line = dip_node >= 0 ? (after ? b : a) : tree_lower(a, b);
            double th = tree ? -h / model.y.edge_length : -h;
            // The dip node reaches the meet by construction; keep rounding
            // from dropping it onto one branch.
            if (static_cast<int>(i) == dip_node) th = std::max(th, tree_point_meet_height(a, b));
            TreePoint v = tree_point_on_line(line, th);
            if (tree) y = std::move(v);
            else y = MfPoint(HPoint::at_height(f.uy + n.eta * f.sy, -h, model.y.base), std::move(v));
        }
        pts.push_back(HoroPoint{std::move(x), std::move(y)});
    }
    pts.push_back(q);
    return HoroPath::uniform(model, std::move(pts), SegmentRule::lead_x);
}

}  // namespace detail

/// Certified interval for d_⋈(p, q). DL models are answered exactly.
inline DistanceEstimate estimate_distance(const Model& model, const HoroPoint& p, const HoroPoint& q,
                                          const AdmissibleNorm& norm, const Budget& budget = {}) {
    check_horo_point(model, p);
    check_horo_point(model, q);
    DistanceEstimate est;
    est.budget = budget;
    if (model.is_dl()) {
        const double d = static_cast<double>(dl_distance(model, p, q));
        est.lo = est.hi = d;
        est.exact = true;
        est.method = "dl-formula";
        return est;
    }
    if (!model.x.is_heintze()) throw CapabilityError("estimate_distance needs a hyperbolic-plane X factor");
    est.lo = detour_lower_bound(model, p, q, norm);
    if (p == q) {
        est.lo = est.hi = 0.0;
        est.exact = true;
        est.method = "identical";
        return est;
    }
    est.method = "waypoint-descent";

    const UpperBoundWitness w = upper_bound_with_witness(model, p, q, norm, budget.final_refinement);
    est.hi = w.witness_length;

    const detail::Frame f = detail::frame_at(model, p);
    const detail::Node target = detail::to_node(model, f, q);
    const std::optional<double> dip = detail::dip_requirement(model, f, p, q);
    const detail::WaypointProblem prob(model.x.base, !model.y.is_tree(), model.y.is_tree() ? 0.0 : model.y.base, dip, target, norm);
    const detail::OptimizerResult res = detail::optimize_waypoints(prob, budget);
    est.evaluations = res.evaluations;
    est.converged = res.converged;
    const int dip_node = dip ? std::max(1, budget.waypoints) / 2 + 1 : -1;
    for (const auto& snap : res.snapshots) {
        const HoroPath path = detail::nodes_to_path(model, f, p, q, snap, dip_node);
        est.hi = std::min(est.hi, path_length(path, norm, budget.final_refinement));
    }
    if (est.hi < est.lo) {
        // A chord sum cannot undercut the lower bound except by rounding.
        if (est.lo - est.hi > 1e-9 * std::max(1.0, est.lo)) {
            est.converged = false;
            est.clamped = true;
        }
        est.hi = est.lo;
    }
    if (est.hi - est.lo <= budget.tol * std::max(1.0, est.hi)) est.exact = true;
    return est;
}

/// Best path found by the optimizer (for export and inspection).
inline HoroPath estimate_path(const Model& model, const HoroPoint& p, const HoroPoint& q, const AdmissibleNorm& norm,
                              const Budget& budget = {}) {
    if (!model.x.is_heintze() || p == q) return witness_path(model, p, q);
    const detail::Frame f = detail::frame_at(model, p);
    const std::optional<double> dip = detail::dip_requirement(model, f, p, q);
    const detail::WaypointProblem prob(model.x.base, !model.y.is_tree(), model.y.is_tree() ? 0.0 : model.y.base, dip,
                                       detail::to_node(model, f, q), norm);
    const auto res = detail::optimize_waypoints(prob, budget);
    HoroPath best = witness_path(model, p, q);
    double best_len = path_length(best, norm, budget.final_refinement);
    const int dip_node = dip ? std::max(1, budget.waypoints) / 2 + 1 : -1;
    for (const auto& snap : res.snapshots) {
        HoroPath path = detail::nodes_to_path(model, f, p, q, snap, dip_node);
        const double len = path_length(path, norm, budget.final_refinement);
        if (len < best_len) {
            best_len = len;
            best = std::move(path);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// d'_X: infimal length of plane paths with integrand N(|γ'|, |(h∘γ)'|).

inline DistanceEstimate d_prime_estimate(const HPoint& x1, const HPoint& x2, const AdmissibleNorm& norm, const Budget& budget = {}) {
    require_same_base(x1, x2);
    DistanceEstimate est;
    est.budget = budget;
    est.method = "waypoint-descent";
    const double d = h_distance(x1, x2);
    const double dh = std::fabs(x1.height() - x2.height());
    if (d == 0.0) {
        est.exact = true;
        est.method = "identical";
        return est;
    }
    est.lo = std::max({d * norm(1.0, 0.0), 0.5 * (d + dh), dh});
    detail::Node target;
    target.xi = (x2.x() - x1.x()) / x1.y();
    target.tau = x2.height() - x1.height();
    const detail::WaypointProblem prob(x1.base(), false, 0.0, std::nullopt, target, norm);
    // The geodesic itself is a candidate; its length is at most d_X.
    est.hi = prob.length({detail::Node{}, target}, budget.final_refinement);
    const auto res = detail::optimize_waypoints(prob, budget);
    est.evaluations = res.evaluations;
    est.converged = res.converged;
    for (const auto& snap : res.snapshots) est.hi = std::min(est.hi, prob.length(snap, budget.final_refinement));
    if (est.hi < est.lo) {
        if (est.lo - est.hi > 1e-9 * std::max(1.0, est.lo)) {
            est.converged = false;
            est.clamped = true;
        }
        est.hi = est.lo;
    }
    if (est.hi - est.lo <= budget.tol * std::max(1.0, est.hi)) est.exact = true;
    return est;
}

/// 2 h_range + 2^((d - C - 2) / (2 δ)) - C - 5 d.
inline double ldpx_lower_bound(double h_range, double d_endpoints, double delta, double c) {
    if (!(delta > 0.0)) throw ParameterError("ldpx_lower_bound: delta must be positive");
    return 2.0 * h_range + std::exp2((d_endpoints - c - 2.0) / (2.0 * delta)) - c - 5.0 * d_endpoints;
}

}  // namespace horoprod
