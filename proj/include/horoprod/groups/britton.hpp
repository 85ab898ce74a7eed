#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "../errors.hpp"
#include "bs.hpp"
#include "hnn.hpp"

// Britton normal forms g = t^-x h t^y (x, y >= 0, h in H) in the ascending
// HNN extensions BS(1,n) (H = Z, f = n) and HNN(Z^2, B) (H = Z^2, f = B).
//
// Word syntax: whitespace-separated letters t, T (= t^-1), a, A, b, B with an
// optional integer exponent, e.g. "t^-2 a^3 t". b/B exist only for Z^2.

namespace horoprod::groups {

struct Letter {
    char symbol = 't';  // 't', 'a' or 'b'
    std::int64_t power = 1;
};

struct HNNWord {
    std::vector<Letter> letters;
};

/// Parses the word syntax. `allow_b` is false for BS(1,n).
inline HNNWord parse_word(std::string_view text, bool allow_b) {
    HNNWord w;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        const std::size_t start = i;
        const char c = text[i];
        Letter l;
        switch (c) {
            case 't': l = {'t', 1}; break;
            case 'T': l = {'t', -1}; break;
            case 'a': l = {'a', 1}; break;
            case 'A': l = {'a', -1}; break;
            case 'b':
            case 'B':
                if (!allow_b) throw ParseError("letter '" + std::string(1, c) + "' needs the Z^2 group", start, 1);
                l = {'b', c == 'b' ? 1 : -1};
                break;
            default: throw ParseError("unexpected character '" + std::string(1, c) + "' in word", start, 1);
        }
        ++i;
        if (i < text.size() && text[i] == '^') {
            ++i;
            const std::size_t num_start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            const std::size_t digits = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == digits) throw ParseError("exponent needs digits", num_start, i - start);
            if (i - digits > 6) throw ParseError("exponent too large (|e| < 10^6)", num_start, i - num_start);
            l.power *= std::stoll(std::string(text.substr(num_start, i - num_start)));
        }
        if (l.power != 0) w.letters.push_back(l);
        skip();
    }
    return w;
}

inline std::string to_string(const HNNWord& w) {
    std::string s;
    for (const auto& l : w.letters) {
        if (!s.empty()) s += ' ';
        s += l.symbol;
        if (l.power != 1) s += "^" + std::to_string(l.power);
    }
    return s;
}

/// The base group data of an ascending HNN extension of Z^d by f = B.
struct HnnBase {
    IntMat f;

    static HnnBase bs(int n) { return {IntMat::scalar(n)}; }
    static HnnBase z2(const IntMat& b) { return {b}; }

    int dim() const { return f.dim; }
};

struct BrittonForm {
    std::int64_t x = 0;
    IntVec h;
    std::int64_t y = 0;

    friend bool operator==(const BrittonForm&, const BrittonForm&) = default;
};

namespace detail {

inline IntVec to_int(const RatVec& v) {
    IntVec out;
    for (const auto& r : v) {
        if (!r.is_integer() || r.num() > INT64_MAX || r.num() < INT64_MIN) throw ResourceError("Britton form left Z^d");
        out.push_back(static_cast<std::int64_t>(r.num()));
    }
    return out;
}

inline RatVec to_rat(const IntVec& v) {
    RatVec out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

}  // namespace detail

/// Left-to-right rewriting: t^-x h t^y . t = t^-x h t^(y+1);
/// . h' = t^-x (h + f^y h') t^y; . t^-1 = t^-x h t^(y-1) if y > 0, else
/// t^-(x+1) f(h). Finally pinch t^-1 f(h0) t = h0 while possible.
inline BrittonForm britton_reduce(const HNNWord& w, const HnnBase& g) {
    const int d = g.dim();
    BrittonForm r;
    r.h.assign(static_cast<std::size_t>(d), 0);
    for (const auto& l : w.letters) {
        if (l.symbol == 't') {
            for (std::int64_t s = 0; s < (l.power > 0 ? l.power : -l.power); ++s) {
                if (l.power > 0) {
                    ++r.y;
                } else if (r.y > 0) {
                    --r.y;
                } else {
                    ++r.x;
                    r.h = detail::to_int(mul(g.f, detail::to_rat(r.h)));
                }
            }
        } else {
            if (l.symbol == 'b' && d < 2) throw ParseError("letter 'b' needs the Z^2 group", 0, 0);
            IntVec e(static_cast<std::size_t>(d), 0);
            e[l.symbol == 'a' ? 0 : 1] = l.power;
            const IntVec moved = detail::to_int(mul_power(g.f, r.y, detail::to_rat(e)));
            for (int i = 0; i < d; ++i) r.h[static_cast<std::size_t>(i)] += moved[static_cast<std::size_t>(i)];
        }
    }
    while (r.x > 0 && r.y > 0) {
        const RatVec pre = mul_inverse(g.f, detail::to_rat(r.h));
        if (!is_integral(pre)) break;
        r.h = detail::to_int(pre);
        --r.x;
        --r.y;
    }
    return r;
}

inline BrittonForm britton_reduce(std::string_view word, const HnnBase& g) {
    return britton_reduce(parse_word(word, g.dim() == 2), g);
}

// Evaluation into the affine model (w in Q^d, k) with law
// (w, k)(w', k') = (w + f^k w', k + k'); this is BS(1,n) or HNN(Z^2, B).
struct AffineElement {
    RatVec w;
    std::int64_t k = 0;
    friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

inline AffineElement affine_multiply(const HnnBase& g, const AffineElement& a, const AffineElement& b) {
    return {add(a.w, mul_power(g.f, a.k, b.w)), a.k + b.k};
}

inline AffineElement affine_letter(const HnnBase& g, char symbol, std::int64_t power) {
    AffineElement e{RatVec(static_cast<std::size_t>(g.dim()), Rational(0)), 0};
    if (symbol == 't') e.k = power;
    else e.w[symbol == 'a' ? 0 : 1] = Rational(power);
    return e;
}

/// Product of the letters, left to right.
inline AffineElement evaluate(const HNNWord& w, const HnnBase& g) {
    AffineElement acc{RatVec(static_cast<std::size_t>(g.dim()), Rational(0)), 0};
    for (const auto& l : w.letters) acc = affine_multiply(g, acc, affine_letter(g, l.symbol, l.power));
    return acc;
}

inline AffineElement evaluate(const BrittonForm& r, const HnnBase& g) {
    AffineElement acc = affine_letter(g, 't', -r.x);
    acc = affine_multiply(g, acc, AffineElement{detail::to_rat(r.h), 0});
    return affine_multiply(g, acc, affine_letter(g, 't', r.y));
}

inline BSElement to_bs(const AffineElement& e, int n) { return BSElement::from_rational(n, e.k, e.w.at(0)); }
inline HNNElement to_hnn(const AffineElement& e, const IntMat& b) { return HNNElement{b, e.w, e.k}; }

inline std::string to_string(const BrittonForm& r) {
    std::string h = "(";
    for (std::size_t i = 0; i < r.h.size(); ++i) h += (i ? "," : "") + std::to_string(r.h[i]);
    return "t^-" + std::to_string(r.x) + " h" + h + ") t^" + std::to_string(r.y);
}

}  // namespace horoprod::groups
