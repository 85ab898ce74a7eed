#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

#include "../errors.hpp"
#include "../rational.hpp"
#include "../tree.hpp"

// Bass-Serre trees of ascending HNN extensions of Z^d by an injective integer
// matrix B (d = 1: BS(1,n) with B = [n]; d = 2: HNN(Z^2, B)).
//
// A vertex at height h is a coset z + B^{-h} Z^d with z in Z^d[B^{-1}]. Its
// TreeVertex digits are the expansion z = sum_l B^l r_{d_l} over levels
// l < -h, where r_0 = 0, r_1, ... are fixed representatives of Z^d / B Z^d.
// For d = 1 this is the usual base-n digit encoding of tree_core.

namespace horoprod::groups {

using RatVec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

struct IntMat {
    int dim = 1;
    std::int64_t e[2][2] = {{1, 0}, {0, 1}};

    static IntMat scalar(std::int64_t n) {
        IntMat m;
        m.dim = 1;
        m.e[0][0] = n;
        return m;
    }
    static IntMat two_by_two(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        IntMat m;
        m.dim = 2;
        m.e[0][0] = a;
        m.e[0][1] = b;
        m.e[1][0] = c;
        m.e[1][1] = d;
        return m;
    }

    std::int64_t det() const { return dim == 1 ? e[0][0] : e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    std::int64_t trace() const { return dim == 1 ? e[0][0] : e[0][0] + e[1][1]; }

    friend bool operator==(const IntMat& a, const IntMat& b) {
        if (a.dim != b.dim) return false;
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < a.dim; ++j)
                if (a.e[i][j] != b.e[i][j]) return false;
        return true;
    }
};

inline RatVec mul(const IntMat& m, const RatVec& v) {
    RatVec out(static_cast<std::size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i) {
        Rational s;
        for (int j = 0; j < m.dim; ++j) s += Rational(m.e[i][j]) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

/// B^{-1} v = adj(B) v / det B.
inline RatVec mul_inverse(const IntMat& m, const RatVec& v) {
    const Rational det(m.det());
    if (m.dim == 1) return {v[0] / det};
    const RatVec adj{Rational(m.e[1][1]) * v[0] - Rational(m.e[0][1]) * v[1],
                     Rational(-m.e[1][0]) * v[0] + Rational(m.e[0][0]) * v[1]};
    return {adj[0] / det, adj[1] / det};
}

/// B^k v for any integer k.
inline RatVec mul_power(const IntMat& m, std::int64_t k, RatVec v) {
    for (std::int64_t i = 0; i < k; ++i) v = mul(m, v);
    for (std::int64_t i = 0; i > k; --i) v = mul_inverse(m, v);
    return v;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RatVec negate(const RatVec& a) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline bool is_integral(const RatVec& v) {
    for (const auto& r : v)
        if (!r.is_integer()) return false;
    return true;
}

class CosetTree {
public:
    explicit CosetTree(IntMat b) : b_(b) {
        const std::int64_t det = b_.det();
        if (det == 0) throw ParameterError("coset tree: matrix must be invertible over Q");
        index_ = std::llabs(det);
        if (index_ < 2) throw ParameterError("coset tree: |det B| must be at least 2 for a branching tree");
        if (index_ > 64) throw ResourceError("coset tree: index above 64");
        // d = 1 keeps the digits 0..n-1 of tree_core; d = 2 takes the first
        // vectors by increasing sup norm.
        for (std::int64_t radius = 0; static_cast<std::int64_t>(reps_.size()) < index_; ++radius) {
            if (b_.dim == 1) {
                try_rep({radius});
            } else {
                for (std::int64_t x = -radius; x <= radius; ++x)
                    for (std::int64_t y = -radius; y <= radius; ++y)
                        if (std::max(std::llabs(x), std::llabs(y)) == radius) try_rep({x, y});
            }
        }
    }

    const IntMat& matrix() const noexcept { return b_; }
    int branching() const noexcept { return static_cast<int>(index_); }
    const std::vector<IntVec>& representatives() const noexcept { return reps_; }

    /// Representative index of an integral vector modulo B Z^d.
    int digit_of(const RatVec& u) const {
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            if (same_class(u, reps_[i])) return static_cast<int>(i);
        }
        throw StructureError("coset tree: vector has no representative (not integral?)");
    }

    /// A vector in the coset of v.
    RatVec value(const TreeVertex& v) const {
        check(v);
        RatVec z(static_cast<std::size_t>(b_.dim), Rational(0));
        for (const auto& [level, d] : v.digits) z = add(z, mul_power(b_, level, to_rat(reps_[static_cast<std::size_t>(d)])));
        return z;
    }

    /// The vertex z + B^{-h} Z^d.
    TreeVertex vertex(const RatVec& z, std::int64_t h) const {
        if (static_cast<int>(z.size()) != b_.dim) throw ParameterError("coset tree: dimension mismatch");
        std::int64_t e = 0;
        RatVec u = z;
        while (!is_integral(u)) {
            u = mul(b_, u);
            if (++e > 256) throw ResourceError("coset tree: denominator does not clear under B");
        }
        std::map<std::int64_t, int> digits;
        const std::int64_t top = -h;  // digits live on levels < top
        for (std::int64_t j = 0; j - e < top; ++j) {
            const int d = digit_of(u);
            if (d != 0) digits[j - e] = d;
            u = mul_inverse(b_, add(u, negate(to_rat(reps_[static_cast<std::size_t>(d)]))));
        }
        return TreeVertex(static_cast<int>(index_), h, std::move(digits));
    }

    /// The vertex B^k v + w (height drops by k).
    TreeVertex act(std::int64_t k, const RatVec& w, const TreeVertex& v) const {
        return vertex(add(mul_power(b_, k, value(v)), w), v.h - k);
    }

private:
    static RatVec to_rat(const IntVec& v) {
        RatVec out;
        for (auto x : v) out.emplace_back(x);
        return out;
    }

    bool same_class(const RatVec& u, const IntVec& r) const {
        RatVec diff = u;
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= Rational(r[i]);
        return is_integral(mul_inverse(b_, diff));
    }

    void try_rep(IntVec v) {
        if (static_cast<std::int64_t>(reps_.size()) >= index_) return;
        const RatVec rv = to_rat(v);
        for (const auto& r : reps_)
            if (same_class(rv, r)) return;
        reps_.push_back(std::move(v));
    }

    void check(const TreeVertex& v) const {
        if (v.m != index_) throw ParameterError("coset tree: vertex branching does not match |det B|");
    }

    IntMat b_;
    std::int64_t index_ = 0;
    std::vector<IntVec> reps_;
};

}  // namespace horoprod::groups
