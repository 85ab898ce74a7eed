#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "distance.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "path.hpp"

// JSON encodings of points, paths and distance results. Every top-level
// document carries "schema": "horoprod/1" and a "kind".

namespace horoprod {

using json = nlohmann::json;

inline constexpr const char* schema_version = "horoprod/1";

inline json document(const char* kind) { return json{{"schema", schema_version}, {"kind", kind}}; }

inline json to_json(const TreeVertex& v) {
    json digits = json::array();
    for (const auto& [level, d] : v.digits) digits.push_back({level, d});
    return json{{"m", v.m}, {"h", v.h}, {"digits", std::move(digits)}};
}

inline json to_json(const TreePoint& p) {
    json j = to_json(p.vertex);
    j["kind"] = "tree";
    j["offset"] = p.offset;
    return j;
}

inline json to_json(const HPoint& p) { return json{{"kind", "h2"}, {"x", p.x()}, {"height", p.height()}, {"base", p.base()}}; }

inline json to_json(const MfPoint& p) {
    json j{{"kind", "mf"}, {"x", p.plane.x()}, {"height", p.plane.height()}, {"base", p.plane.base()}};
    j["sheet"] = to_json(p.sheet);
    return j;
}

inline json to_json(const FactorPoint& p) {
    return std::visit([](const auto& v) { return to_json(v); }, p);
}

inline json to_json(const HoroPoint& p) { return json{{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

inline json to_json(const HoroPath& path) {
    json j = document("path");
    j["model"] = path.model.descriptor;
    json pts = json::array();
    for (const auto& p : path.waypoints) pts.push_back(to_json(p));
    json rules = json::array();
    for (auto r : path.rules) rules.push_back(std::string(segment_rule_name(r)));
    j["waypoints"] = std::move(pts);
    j["rules"] = std::move(rules);
    return j;
}

inline json to_json(const Budget& b) {
    return json{{"waypoints", b.waypoints}, {"restarts", b.restarts},   {"sweeps", b.sweeps},
                {"line_evals", b.line_evals}, {"refinement", b.refinement}, {"final_refinement", b.final_refinement},
                {"seed", b.seed}};
}

inline json to_json(const DistanceEstimate& e) {
    return json{{"lo", e.lo},       {"hi", e.hi},         {"exact", e.exact}, {"converged", e.converged}, {"clamped", e.clamped},
                {"method", e.method}, {"budget", to_json(e.budget)}, {"evaluations", e.evaluations}};
}

// ---------------------------------------------------------------------------
// Reading. Malformed input is a ParseError; structural violations (heights
// that do not match, wrong factor kinds) keep their own error types.

namespace detail {

inline const json& field(const json& j, const char* name, const char* where) {
    if (!j.is_object()) throw ParseError(std::string(where) + ": expected a JSON object", 0, 0);
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string(where) + ": missing field '" + name + "'", 0, 0);
    return *it;
}

inline double number_field(const json& j, const char* name, const char* where) {
    const json& v = field(j, name, where);
    if (!v.is_number()) throw ParseError(std::string(where) + ": field '" + name + "' must be a number", 0, 0);
    return v.get<double>();
}

inline std::int64_t integer_field(const json& j, const char* name, const char* where) {
    const json& v = field(j, name, where);
    if (!v.is_number_integer()) throw ParseError(std::string(where) + ": field '" + name + "' must be an integer", 0, 0);
    return v.get<std::int64_t>();
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw ParseError(std::string(where) + ": expected a JSON object", 0, 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError(std::string(where) + ": unknown field '" + it.key() + "'", 0, 0);
    }
}

inline TreeVertex tree_vertex_from_json(const json& j, const char* where) {
    const auto m = integer_field(j, "m", where);
    const auto h = integer_field(j, "h", where);
    std::map<std::int64_t, int> digits;
    if (j.contains("digits")) {
        const json& d = j.at("digits");
        if (!d.is_array()) throw ParseError(std::string(where) + ": 'digits' must be an array of [level, digit]", 0, 0);
        for (const auto& e : d) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw ParseError(std::string(where) + ": each digit must be [level, digit]", 0, 0);
            const int digit = e[1].get<int>();
            if (digit != 0) digits[e[0].get<std::int64_t>()] = digit;
        }
    }
    if (m < 2 || m > 64) throw ParseError(std::string(where) + ": branching out of range", 0, 0);
    return TreeVertex(static_cast<int>(m), h, std::move(digits));
}

inline TreePoint tree_point_from_json(const json& j, const char* where) {
    const double off = j.contains("offset") ? number_field(j, "offset", where) : 0.0;
    return TreePoint(tree_vertex_from_json(j, where), off);
}

// "height" or, for convenience, the upper-half-plane "y".
inline HPoint plane_from_json(const json& j, double base, const char* where) {
    const double x = number_field(j, "x", where);
    if (j.contains("height")) return HPoint::at_height(x, number_field(j, "height", where), base);
    return HPoint(x, number_field(j, "y", where), base);
}

}  // namespace detail

inline FactorPoint factor_point_from_json(const Factor& f, const json& j) {
    const char* where = "point";
    const json& kind = detail::field(j, "kind", where);
    if (!kind.is_string()) throw ParseError("point: 'kind' must be a string", 0, 0);
    const std::string k = kind.get<std::string>();
    const double base = j.contains("base") ? detail::number_field(j, "base", where) : f.base;
    FactorPoint out;
    if (k == "tree") {
        detail::reject_unknown(j, {"kind", "m", "h", "digits", "offset"}, "tree point");
        out = detail::tree_point_from_json(j, "tree point");
    } else if (k == "h2") {
        detail::reject_unknown(j, {"kind", "x", "height", "y", "base"}, "h2 point");
        out = detail::plane_from_json(j, base, "h2 point");
    } else if (k == "mf") {
        detail::reject_unknown(j, {"kind", "x", "height", "y", "base", "sheet"}, "mf point");
        const json& sheet = detail::field(j, "sheet", "mf point");
        out = MfPoint(detail::plane_from_json(j, base, "mf point"), detail::tree_point_from_json(sheet, "mf sheet"));
    } else {
        throw ParseError("point: unknown kind '" + k + "' (expected tree, h2 or mf)", 0, 0);
    }
    check_factor_point(f, out);
    return out;
}

inline HoroPoint horo_point_from_json(const Model& model, const json& j) {
    detail::reject_unknown(j, {"x", "y"}, "horocyclic point");
    HoroPoint p{factor_point_from_json(model.x, detail::field(j, "x", "horocyclic point")),
                factor_point_from_json(model.y, detail::field(j, "y", "horocyclic point"))};
    check_horo_point(model, p);
    return p;
}

inline json parse_json_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": malformed JSON (" + e.what() + ")", e.byte > 0 ? e.byte - 1 : 0, 1);
    }
}

}  // namespace horoprod
