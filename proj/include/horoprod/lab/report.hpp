#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "../errors.hpp"
#include "../serialize.hpp"

namespace horoprod::lab {

/// Inputs shared by all checks. Unset fields take per-check defaults.
struct CheckConfig {
    std::optional<std::string> model;
    std::optional<std::string> norm;
    std::uint64_t seed = 0;
    std::optional<int> samples;
    std::optional<double> tol;
    std::optional<int> exhaustive;  // radius for exhaustive graph checks
    double delta = 0.9;             // thin-triangle constant for plane checks
};

struct CheckReport {
    std::string check;
    std::string anchor;
    std::string model;
    std::optional<std::string> norm;  // empty for checks that use no norm
    long samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    bool pass = false;
    double worst_margin = 0.0;
    std::optional<json> counterexample;
    json details = json::object();
    std::optional<double> wall_seconds;  // only when timing is requested
};

/// Tracks the smallest margin and a payload describing where it occurred.
/// The payload builder only runs when a new minimum is found.
class WorstCase {
public:
    void record(double margin, const std::function<json()>& payload) {
        if (!std::isfinite(margin)) throw Error("non-finite margin in a check");
        ++count_;
        if (!payload_ || margin < margin_) {
            margin_ = margin;
            payload_ = payload();
        }
    }

    double margin() const noexcept { return payload_ ? margin_ : 0.0; }
    long count() const noexcept { return count_; }
    const std::optional<json>& payload() const noexcept { return payload_; }

private:
    double margin_ = std::numeric_limits<double>::infinity();
    std::optional<json> payload_;
    long count_ = 0;
};

/// Fills margin, pass and (on failure) the counterexample.
inline void conclude(CheckReport& r, const WorstCase& w, bool pass) {
    r.worst_margin = w.margin();
    r.pass = pass;
    if (!pass) r.counterexample = w.payload() ? *w.payload() : json{{"note", "no samples were evaluated"}};
}

inline json to_json(const CheckReport& r) {
    json j = document("check-report");
    j["check"] = r.check;
    j["anchor"] = r.anchor;
    j["model"] = r.model;
    j["norm"] = r.norm ? json(*r.norm) : json(nullptr);
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["worst_margin"] = r.worst_margin;
    j["counterexample"] = r.counterexample ? *r.counterexample : json(nullptr);
    j["details"] = r.details;
    if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
    return j;
}

}  // namespace horoprod::lab
