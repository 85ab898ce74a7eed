#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "norm.hpp"

// Polyline paths in X ⋈ Y.
//
// Moving both coordinates along their own factor geodesics at once generally
// breaks h_X = -h_Y, so every segment rule slaves one or both heights:
//   horospherical  the common height moves linearly; plane coordinates move
//                  linearly in their horizontal coordinate, tree coordinates
//                  ride a vertical line.
//   lead_x         X follows its factor geodesic; Y takes height -h_X, with
//                  its horizontal coordinate interpolated by arclength.
//   lead_y         mirror image of lead_x.

namespace horoprod {

enum class SegmentRule { horospherical, lead_x, lead_y };

inline std::string_view segment_rule_name(SegmentRule r) {
    switch (r) {
        case SegmentRule::horospherical: return "horospherical";
        case SegmentRule::lead_x: return "lead_x";
        case SegmentRule::lead_y: return "lead_y";
    }
    return "?";
}

struct HoroPath {
    Model model;
    std::vector<HoroPoint> waypoints;
    std::vector<SegmentRule> rules;  // one per segment

    HoroPath() = default;
    HoroPath(Model m, std::vector<HoroPoint> pts, std::vector<SegmentRule> r)
        : model(std::move(m)), waypoints(std::move(pts)), rules(std::move(r)) {}

    /// All segments use the same rule.
    static HoroPath uniform(Model m, std::vector<HoroPoint> pts, SegmentRule rule) {
        std::vector<SegmentRule> r(pts.empty() ? 0 : pts.size() - 1, rule);
        return HoroPath(std::move(m), std::move(pts), std::move(r));
    }

    std::size_t segments() const noexcept { return rules.size(); }
};

inline void validate_segment(const Model& model, const HoroPoint& a, const HoroPoint& b, SegmentRule rule) {
    switch (rule) {
        case SegmentRule::horospherical:
            if (!can_slave(model.x, a.x, b.x) || !can_slave(model.y, a.y, b.y))
                throw StructureError("horospherical segment: tree coordinates must share a vertical line");
            return;
        case SegmentRule::lead_x:
            if (!can_slave(model.y, a.y, b.y))
                throw StructureError("lead_x segment: Y tree coordinates must share a vertical line");
            return;
        case SegmentRule::lead_y:
            if (!can_slave(model.x, a.x, b.x))
                throw StructureError("lead_y segment: X tree coordinates must share a vertical line");
            return;
    }
}

inline void validate_path(const HoroPath& path) {
    if (path.waypoints.empty()) throw StructureError("path has no waypoints");
    if (path.rules.size() + 1 != path.waypoints.size())
        throw StructureError("path needs exactly one segment rule per consecutive waypoint pair");
    for (const auto& p : path.waypoints) check_horo_point(path.model, p);
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
        validate_segment(path.model, path.waypoints[i], path.waypoints[i + 1], path.rules[i]);
}

/// Samples of one segment at fractions j / pieces, j = 0..pieces.
inline std::vector<HoroPoint> segment_samples(const Model& model, const HoroPoint& a, const HoroPoint& b,
                                              SegmentRule rule, int pieces) {
    std::vector<HoroPoint> out;
    out.reserve(static_cast<std::size_t>(pieces) + 1);
    out.push_back(a);
    switch (rule) {
        case SegmentRule::horospherical: {
            const double ha = horo_height(model, a);
            const double hb = horo_height(model, b);
            for (int j = 1; j < pieces; ++j) {
                const double f = static_cast<double>(j) / pieces;
                const double h = ha + f * (hb - ha);
                out.push_back(HoroPoint{slave_point(model.x, a.x, b.x, f, h), slave_point(model.y, a.y, b.y, f, -h)});
            }
            break;
        }
        case SegmentRule::lead_x: {
            const FactorGeodesic g(model.x, a.x, b.x);
            for (int j = 1; j < pieces; ++j) {
                const double f = static_cast<double>(j) / pieces;
                FactorPoint x = g.at_fraction(f);
                const double h = factor_height(model.x, x);
                out.push_back(HoroPoint{std::move(x), slave_point(model.y, a.y, b.y, f, -h)});
            }
            break;
        }
        case SegmentRule::lead_y: {
            const FactorGeodesic g(model.y, a.y, b.y);
            for (int j = 1; j < pieces; ++j) {
                const double f = static_cast<double>(j) / pieces;
                FactorPoint y = g.at_fraction(f);
                const double h = -factor_height(model.y, y);
                out.push_back(HoroPoint{slave_point(model.x, a.x, b.x, f, h), std::move(y)});
            }
            break;
        }
    }
    if (pieces >= 1) out.push_back(b);
    return out;
}

/// Chord sum of N(d_X, d_Y) with each segment cut into `refinement` pieces.
/// Non-decreasing along nested refinements (r, 2r, 4r, ...).
inline double path_length(const HoroPath& path, const AdmissibleNorm& norm, int refinement) {
    if (refinement < 1) throw ParameterError("path_length: refinement must be at least 1");
    validate_path(path);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
        const auto samples = segment_samples(path.model, path.waypoints[i], path.waypoints[i + 1], path.rules[i], refinement);
        for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
            total += norm(dist_x(path.model, samples[j], samples[j + 1]), dist_y(path.model, samples[j], samples[j + 1]));
        }
    }
    return total;
}

}  // namespace horoprod
