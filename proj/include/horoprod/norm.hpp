#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace horoprod {

enum class NormTag { linf, l1half, l2norm, custom };

inline std::string_view norm_tag_name(NormTag t) {
    switch (t) {
        case NormTag::linf: return "linf";
        case NormTag::l1half: return "l1half";
        case NormTag::l2norm: return "l2norm";
        case NormTag::custom: return "custom";
    }
    return "custom";
}

struct NormCertificate {
    bool normalized = false;
    bool admissible = false;  // N >= L^1 / 2
    bool monotone = false;
    bool homogeneous = false;
    bool convex = false;
    double normalization_error = 0.0;
    double admissibility_margin = 0.0;  // min of N - (a+b)/2 over the grid
    double monotonicity_margin = 0.0;   // min forward difference over the grid

    bool passes() const noexcept { return normalized && admissible && monotone && homogeneous && convex; }
};

/// A norm on R^2 restricted to the closed positive quadrant.
class AdmissibleNorm {
public:
    using Evaluator = std::function<double(double, double)>;

    static AdmissibleNorm linf() { return {NormTag::linf, "linf", [](double a, double b) { return std::max(a, b); }}; }
    static AdmissibleNorm l1half() { return {NormTag::l1half, "l1half", [](double a, double b) { return 0.5 * (a + b); }}; }
    static AdmissibleNorm l2norm() {
        return {NormTag::l2norm, "l2norm", [](double a, double b) { return std::sqrt(0.5 * (a * a + b * b)); }};
    }

    static AdmissibleNorm from_tag(NormTag t) {
        switch (t) {
            case NormTag::linf: return linf();
            case NormTag::l1half: return l1half();
            case NormTag::l2norm: return l2norm();
            case NormTag::custom: break;
        }
        throw ParameterError("custom norms need an evaluator");
    }

    static AdmissibleNorm from_name(std::string_view name) {
        if (name == "linf") return linf();
        if (name == "l1half") return l1half();
        if (name == "l2norm") return l2norm();
        throw ParameterError("unknown norm '" + std::string(name) + "' (expected linf, l1half or l2norm)");
    }

    /// Builds a custom norm after certifying it; throws ParameterError when a
    /// certificate fails.
    static AdmissibleNorm custom(std::string name, Evaluator eval) {
        AdmissibleNorm n = unchecked(std::move(name), std::move(eval));
        const NormCertificate c = n.certify();
        if (!c.normalized) throw ParameterError("norm '" + n.name_ + "' is not normalized: N(1,1) != 1");
        if (!c.admissible) throw ParameterError("norm '" + n.name_ + "' is not admissible: N < (a+b)/2 somewhere");
        if (!c.monotone) throw ParameterError("norm '" + n.name_ + "' is not monotone");
        if (!c.homogeneous || !c.convex) throw ParameterError("norm '" + n.name_ + "' fails the norm axioms");
        n.certified_ = true;
        return n;
    }

    /// No certification. Used to exhibit failing candidates.
    static AdmissibleNorm unchecked(std::string name, Evaluator eval) {
        AdmissibleNorm n{NormTag::custom, std::move(name), std::move(eval)};
        n.certified_ = false;
        return n;
    }

    double operator()(double a, double b) const { return eval_(a, b); }

    NormTag tag() const noexcept { return tag_; }
    const std::string& name() const noexcept { return name_; }
    /// Built-in, or custom and certified admissible and monotone.
    bool certified() const noexcept { return certified_; }

    NormCertificate certify() const {
        NormCertificate c;
        c.normalization_error = std::fabs(eval_(1.0, 1.0) - 1.0);
        c.normalized = c.normalization_error <= 1e-12;

        constexpr int grid = 100;
        constexpr double extent = 4.0;
        constexpr double step = extent / (grid - 1);
        std::vector<double> values(static_cast<std::size_t>(grid * grid));
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) values[static_cast<std::size_t>(i * grid + j)] = eval_(i * step, j * step);

        c.admissibility_margin = INFINITY;
        c.monotonicity_margin = INFINITY;
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                const double v = values[static_cast<std::size_t>(i * grid + j)];
                c.admissibility_margin = std::min(c.admissibility_margin, v - 0.5 * (i * step + j * step));
                if (i + 1 < grid)
                    c.monotonicity_margin = std::min(c.monotonicity_margin, values[static_cast<std::size_t>((i + 1) * grid + j)] - v);
                if (j + 1 < grid)
                    c.monotonicity_margin = std::min(c.monotonicity_margin, values[static_cast<std::size_t>(i * grid + j + 1)] - v);
            }
        }
        c.admissible = c.admissibility_margin >= -1e-12;
        c.monotone = c.monotonicity_margin >= -1e-12;

        // Sampled norm axioms on a fixed deterministic pattern.
        c.homogeneous = true;
        c.convex = true;
        for (int i = 0; i < 17; ++i) {
            const double a = 0.23 * i;
            const double b = 3.7 - 0.19 * i;
            const double a2 = 0.11 * ((i * 7) % 17);
            const double b2 = 0.13 * ((i * 5) % 17);
            for (double lambda : {0.0, 0.5, 2.0, 7.25}) {
                const double lhs = eval_(lambda * a, lambda * b);
                if (std::fabs(lhs - lambda * eval_(a, b)) > 1e-12 * (1.0 + std::fabs(lhs))) c.homogeneous = false;
            }
            for (double s : {0.25, 0.5, 0.75}) {
                const double mid = eval_((1 - s) * a + s * a2, (1 - s) * b + s * b2);
                if (mid > (1 - s) * eval_(a, b) + s * eval_(a2, b2) + 1e-12) c.convex = false;
            }
        }
        return c;
    }

private:
    AdmissibleNorm(NormTag t, std::string name, Evaluator eval)
        : tag_(t), name_(std::move(name)), eval_(std::move(eval)) {}

    NormTag tag_;
    std::string name_;
    Evaluator eval_;
    bool certified_ = true;
};

inline std::vector<AdmissibleNorm> builtin_norms() {
    return {AdmissibleNorm::linf(), AdmissibleNorm::l1half(), AdmissibleNorm::l2norm()};
}

}  // namespace horoprod
