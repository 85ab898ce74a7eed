#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

namespace horoprod::numerics {

inline constexpr double golden_ratio_conjugate = 0.6180339887498949;

/// Deterministic generator. Real draws go through our own mapping rather than
/// std::uniform_real_distribution so that reports are reproducible across
/// standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                           double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

struct Minimum {
    double argmin;
    double value;
};

/// Golden-section search for a minimum of `f` on [lo, hi]. Assumes
/// unimodality on the bracket; otherwise returns some local minimum.
template <class F>
Minimum golden_section(F&& f, double lo, double hi, double tol = 1e-12, int max_evals = 200) {
    double a = lo;
    double b = hi;
    double c = b - golden_ratio_conjugate * (b - a);
    double d = a + golden_ratio_conjugate * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int evals = 2; evals < max_evals && (b - a) > tol; ++evals) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden_ratio_conjugate * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden_ratio_conjugate * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

/// Grid scan followed by golden-section refinement around the best sample.
/// Used where the objective may have several local minima on the bracket.
template <class F>
Minimum scan_then_refine(F&& f, double lo, double hi, int samples = 64, double tol = 1e-12) {
    if (!(hi > lo)) return Minimum{lo, f(lo)};
    const double step = (hi - lo) / samples;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double v = f(lo + step * i);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double a = lo + step * std::max(0, best - 1);
    const double b = lo + step * std::min(samples, best + 1);
    Minimum refined = golden_section(f, a, b, tol);
    if (refined.value <= best_value) return refined;
    return Minimum{lo + step * best, best_value};
}

}  // namespace horoprod::numerics
