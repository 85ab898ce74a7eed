#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "../errors.hpp"
#include "../model.hpp"
#include "../tree.hpp"

// Lamplighter (Z/m) wr Z. An element (f, k) is a lamp configuration f with
// finite support and a cursor k; (f, k)(f', k') = (f + f'(. - k), k + k').
//
// DL(m, m) vertices correspond to elements: lamps at positions i >= k give the
// X vertex (height k, digit f(i) at level -i-1) and lamps at i < k give the Y
// vertex (height -k, digit f(i) at level i). Right multiplication by
// (j delta_0, 1) is then exactly a DL edge, so left multiplication preserves
// adjacency.

namespace horoprod::groups {

struct LampElement {
    int m = 2;
    std::map<std::int64_t, int> f;  // position -> nonzero lamp value
    std::int64_t k = 0;

    LampElement() = default;
    LampElement(int modulus, std::map<std::int64_t, int> lamps, std::int64_t cursor) : m(modulus), f(std::move(lamps)), k(cursor) {
        if (m < 2) throw ParameterError("lamplighter modulus must be at least 2");
        for (auto it = f.begin(); it != f.end();) {
            it->second = ((it->second % m) + m) % m;
            it = it->second == 0 ? f.erase(it) : std::next(it);
        }
    }

    static LampElement identity(int m) { return LampElement(m, {}, 0); }
    static LampElement t(int m) { return LampElement(m, {}, 1); }
    static LampElement a(int m) { return LampElement(m, {{0, 1}}, 0); }

    int lamp(std::int64_t i) const {
        auto it = f.find(i);
        return it == f.end() ? 0 : it->second;
    }

    friend bool operator==(const LampElement&, const LampElement&) = default;
    friend auto operator<=>(const LampElement& a, const LampElement& b) {
        if (auto c = a.m <=> b.m; c != 0) return c;
        if (auto c = a.k <=> b.k; c != 0) return c;
        return a.f <=> b.f;
    }
};

inline void require_same_modulus(const LampElement& a, const LampElement& b) {
    if (a.m != b.m) throw ParameterError("lamplighter elements with different moduli");
}

inline LampElement multiply(const LampElement& a, const LampElement& b) {
    require_same_modulus(a, b);
    std::map<std::int64_t, int> f = a.f;
    for (const auto& [i, v] : b.f) f[i + a.k] += v;
    return LampElement(a.m, std::move(f), a.k + b.k);
}

inline LampElement inverse(const LampElement& g) {
    // (f, k)^{-1} = (-f(. + k), -k)
    std::map<std::int64_t, int> f;
    for (const auto& [i, v] : g.f) f[i - g.k] = -v;
    return LampElement(g.m, std::move(f), -g.k);
}

inline std::int64_t height_change(const LampElement& g) noexcept { return g.k; }

inline HoroPoint lamp_to_dl(const LampElement& g) {
    std::map<std::int64_t, int> dx;
    std::map<std::int64_t, int> dy;
    for (const auto& [i, v] : g.f) {
        if (i >= g.k) dx[-i - 1] = v;
        else dy[i] = v;
    }
    return HoroPoint{TreePoint(TreeVertex(g.m, g.k, std::move(dx))), TreePoint(TreeVertex(g.m, -g.k, std::move(dy)))};
}

inline LampElement dl_to_lamp(const Model& model, const HoroPoint& p) {
    if (!model.is_dl() || model.x.branching != model.y.branching)
        throw ModelError("lamplighter bijection needs DL(m, m)");
    check_horo_point(model, p);
    const auto& x = std::get<TreePoint>(p.x);
    const auto& y = std::get<TreePoint>(p.y);
    if (!x.is_vertex() || !y.is_vertex()) throw StructureError("lamplighter bijection needs vertices");
    std::map<std::int64_t, int> f;
    for (const auto& [level, v] : x.vertex.digits) f[-level - 1] = v;
    for (const auto& [level, v] : y.vertex.digits) f[level] = v;
    return LampElement(model.x.branching, std::move(f), x.vertex.h);
}

/// Left multiplication transported to DL(m, m).
inline HoroPoint act_lamplighter(const LampElement& g, const Model& model, const HoroPoint& p) {
    if (!model.is_dl() || model.x.branching != g.m || model.y.branching != g.m)
        throw ParameterError("act_lamplighter: model must be DL(m, m) with the element's m");
    return lamp_to_dl(multiply(g, dl_to_lamp(model, p)));
}

inline std::string to_string(const LampElement& g) {
    std::string s = "lamp(m=" + std::to_string(g.m) + ", k=" + std::to_string(g.k) + ", f={";
    bool first = true;
    for (const auto& [i, v] : g.f) {
        if (!first) s += ",";
        s += std::to_string(i) + ":" + std::to_string(v);
        first = false;
    }
    return s + "})";
}

}  // namespace horoprod::groups
