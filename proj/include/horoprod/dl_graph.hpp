#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distance.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "tree.hpp"

// Breadth-first oracle for Diestel-Leader graphs DL(m,n).
//
// Vertices near the origin are stored densely: digits over the level window
// [-W, W) for both trees plus the common height. A ball of radius R around
// the origin fits in the window W = R.

namespace horoprod {

class DLBall {
public:
    static constexpr int max_window = 32;

    struct Vertex {
        int h = 0;                                  // height of the X coordinate
        std::array<std::uint8_t, 2 * max_window> x{};  // X digits, index = level + W
        std::array<std::uint8_t, 2 * max_window> y{};  // Y digits
    };

    DLBall(int m, int n, int radius) : m_(m), n_(n), radius_(radius), window_(radius) {
        if (m < 2 || n < 2) throw ParameterError("DLBall: branching numbers must be at least 2");
        if (radius < 0) throw ParameterError("DLBall: negative radius");
        if (radius > max_window) throw ResourceError("DLBall: radius above the supported window");
        const double bits = 2.0 * window_ * (std::log2(m) + std::log2(n)) + std::log2(2.0 * window_ + 1.0);
        if (bits > 126.0) throw ResourceError("DLBall: ball does not fit the packed encoding");
        // Observed growth is below (m + n) / 2 + 1 per step.
        const double estimate = std::pow(0.5 * (m + n) + 1.0, radius);
        if (estimate > 4.0e8) throw ResourceError("DLBall: ball too large for the desk-scale oracle");
        build();
    }

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    int radius() const noexcept { return radius_; }
    std::size_t size() const noexcept { return count_; }

    /// BFS distance from the origin, or nothing outside the ball.
    std::optional<int> distance(const Vertex& v) const {
        const std::size_t slot = find(key(v));
        if (keys_[slot] == 0) return std::nullopt;
        return static_cast<int>(dist_[slot]);
    }

    /// Vertices within distance r <= radius, in BFS order.
    std::vector<Vertex> ball(int r) const {
        std::vector<Vertex> out;
        for (std::size_t i = 0; i < order_.size() && order_dist_[i] <= r; ++i) out.push_back(decode(order_[i]));
        return out;
    }

    Vertex origin() const { return Vertex{}; }

    std::vector<Vertex> neighbours(const Vertex& v) const {
        std::vector<Vertex> out;
        out.reserve(static_cast<std::size_t>(m_ + n_));
        // X up, Y down: Y gains a digit at level -(-h) = h.
        for (int j = 0; j < n_; ++j) {
            Vertex w = v;
            set_digit(w.x, -v.h - 1, 0, "X parent");
            w.h = v.h + 1;
            set_digit(w.y, v.h, static_cast<std::uint8_t>(j), "Y child");
            out.push_back(w);
        }
        // X down, Y up: X gains a digit at level -h, Y forgets level h-1.
        for (int i = 0; i < m_; ++i) {
            Vertex w = v;
            set_digit(w.x, -v.h, static_cast<std::uint8_t>(i), "X child");
            w.h = v.h - 1;
            set_digit(w.y, v.h - 1, 0, "Y parent");
            out.push_back(w);
        }
        return out;
    }

    /// Automorphism sending p to the origin: digit-wise subtraction of p in
    /// each tree followed by the height shift. It commutes with forgetting
    /// digits, so it preserves both trees and hence the graph.
    Vertex translate_to_origin(const Vertex& p, const Vertex& v) const {
        Vertex w;
        w.h = v.h - p.h;
        for (int level = -window_; level < window_; ++level) {
            const int dx = digit(v.x, level);
            if (level < -v.h) {
                const int d = (dx - digit(p.x, level) + m_) % m_;
                if (d) set_digit(w.x, level + p.h, static_cast<std::uint8_t>(d), "translated X");
            }
            const int dy = digit(v.y, level);
            if (level < v.h) {
                const int d = (dy - digit(p.y, level) + n_) % n_;
                if (d) set_digit(w.y, level - p.h, static_cast<std::uint8_t>(d), "translated Y");
            }
        }
        return w;
    }

    HoroPoint to_point(const Vertex& v) const {
        std::map<std::int64_t, int> dx;
        std::map<std::int64_t, int> dy;
        for (int level = -window_; level < window_; ++level) {
            if (int d = digit(v.x, level)) dx[level] = d;
            if (int d = digit(v.y, level)) dy[level] = d;
        }
        return HoroPoint{TreePoint(TreeVertex(m_, v.h, std::move(dx))), TreePoint(TreeVertex(n_, -v.h, std::move(dy)))};
    }

private:
    using Key = unsigned __int128;

    int digit(const std::array<std::uint8_t, 2 * max_window>& d, int level) const {
        if (level < -window_ || level >= window_) return 0;
        return d[static_cast<std::size_t>(level + window_)];
    }

    void set_digit(std::array<std::uint8_t, 2 * max_window>& d, int level, std::uint8_t value, const char* what) const {
        if (level < -window_ || level >= window_) {
            if (value == 0) return;
            throw ResourceError(std::string("DLBall: digit outside the window (") + what + ")");
        }
        d[static_cast<std::size_t>(level + window_)] = value;
    }

    Key key(const Vertex& v) const {
        Key k = 0;
        for (int i = 2 * window_ - 1; i >= 0; --i) k = k * static_cast<Key>(m_) + v.x[static_cast<std::size_t>(i)];
        for (int i = 2 * window_ - 1; i >= 0; --i) k = k * static_cast<Key>(n_) + v.y[static_cast<std::size_t>(i)];
        k = k * static_cast<Key>(2 * window_ + 1) + static_cast<Key>(v.h + window_);
        return k + 1;  // 0 marks an empty slot
    }

    Vertex decode(Key k) const {
        Vertex v;
        k -= 1;
        v.h = static_cast<int>(k % static_cast<Key>(2 * window_ + 1)) - window_;
        k /= static_cast<Key>(2 * window_ + 1);
        for (int i = 0; i < 2 * window_; ++i) {
            v.y[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k % static_cast<Key>(n_));
            k /= static_cast<Key>(n_);
        }
        for (int i = 0; i < 2 * window_; ++i) {
            v.x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k % static_cast<Key>(m_));
            k /= static_cast<Key>(m_);
        }
        return v;
    }

    static std::uint64_t hash(Key k) {
        return numerics::splitmix64(static_cast<std::uint64_t>(k) ^ numerics::splitmix64(static_cast<std::uint64_t>(k >> 64)));
    }

    std::size_t find(Key k) const {
        std::size_t slot = hash(k) & mask_;
        while (keys_[slot] != 0 && keys_[slot] != k) slot = (slot + 1) & mask_;
        return slot;
    }

    void grow() {
        std::vector<Key> old_keys = std::move(keys_);
        std::vector<std::uint8_t> old_dist = std::move(dist_);
        const std::size_t cap = old_keys.size() * 2;
        if (cap > (std::size_t{1} << 28)) throw ResourceError("DLBall: ball too large for the desk-scale oracle");
        keys_.assign(cap, 0);
        dist_.assign(cap, 0);
        mask_ = cap - 1;
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == 0) continue;
            const std::size_t slot = find(old_keys[i]);
            keys_[slot] = old_keys[i];
            dist_[slot] = old_dist[i];
        }
    }

    bool insert(Key k, std::uint8_t d) {
        if ((count_ + 1) * 2 > keys_.size()) grow();
        const std::size_t slot = find(k);
        if (keys_[slot] != 0) return false;
        keys_[slot] = k;
        dist_[slot] = d;
        ++count_;
        return true;
    }

    void build() {
        const std::size_t cap = 1024;
        keys_.assign(cap, 0);
        dist_.assign(cap, 0);
        mask_ = cap - 1;
        std::vector<Key> frontier{key(origin())};
        insert(frontier.front(), 0);
        order_ = frontier;
        order_dist_ = {0};
        for (int d = 1; d <= radius_; ++d) {
            std::vector<Key> next;
            for (Key k : frontier) {
                for (const Vertex& w : neighbours(decode(k))) {
                    const Key kw = key(w);
                    if (insert(kw, static_cast<std::uint8_t>(d))) next.push_back(kw);
                }
            }
            for (Key k : next) {
                order_.push_back(k);
                order_dist_.push_back(d);
            }
            frontier = std::move(next);
        }
    }

    int m_;
    int n_;
    int radius_;
    int window_;
    std::vector<Key> keys_;
    std::vector<std::uint8_t> dist_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
    std::vector<Key> order_;
    std::vector<int> order_dist_;
};

struct DLCertificate {
    int m = 0;
    int n = 0;
    int radius = 0;
    long long pairs = 0;
    long long mismatches = 0;
    std::optional<std::pair<HoroPoint, HoroPoint>> counterexample;
    double seconds = 0.0;

    bool passed() const noexcept { return mismatches == 0; }
};

/// Compares dl_distance against BFS distances on every unordered pair of the
/// radius-r ball. Geodesics between points of B(o, r) stay in B(o, 2r), and
/// the translation automorphism moves each pair's first point to o.
inline DLCertificate certify_dl_distance(int m, int n, int r) {
    const auto start = std::chrono::steady_clock::now();
    DLCertificate cert;
    cert.m = m;
    cert.n = n;
    cert.radius = r;
    const DLBall big(m, n, 2 * r);
    const Model model = Model::diestel_leader(m, n);
    const auto ball = big.ball(r);
    std::vector<HoroPoint> points;
    points.reserve(ball.size());
    for (const auto& v : ball) points.push_back(big.to_point(v));
    for (std::size_t i = 0; i < ball.size(); ++i) {
        for (std::size_t j = i; j < ball.size(); ++j) {
            const auto bfs = big.distance(big.translate_to_origin(ball[i], ball[j]));
            const std::int64_t formula = dl_distance(model, points[i], points[j]);
            ++cert.pairs;
            if (!bfs || *bfs != formula) {
                ++cert.mismatches;
                if (!cert.counterexample) cert.counterexample = std::make_pair(points[i], points[j]);
            }
        }
    }
    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

}  // namespace horoprod
