#pragma once

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "descriptor.hpp"
#include "distance.hpp"
#include "export.hpp"
#include "groups/orbit.hpp"
#include "lab/checks.hpp"
#include "lab/classify.hpp"
#include "serialize.hpp"

// horoprod <distance|verify|classify|export|orbit> [flags]
// Exit codes: 0 pass, 1 check failure, 2 usage or parse error, 3 IO error.

namespace horoprod::cli {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_io = 3 };

class IoError : public Error {
public:
    using Error::Error;
};

enum class Format { json, csv, human };

struct RunConfig {
    std::string command;
    std::optional<std::string> model;
    std::optional<std::string> norm;
    std::uint64_t seed = 0;
    std::optional<int> samples;
    std::optional<double> tol;
    std::optional<std::string> out;
    Format format = Format::json;
    int jobs = 1;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return s;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.out) {
        out << text;
        return;
    }
    std::ofstream f(*cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + *cfg.out + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("error while writing '" + *cfg.out + "'");
}

/// Inline JSON, or @path for a file.
inline json point_argument(const std::string& arg, const char* what) {
    if (!arg.empty() && arg.front() == '@') return parse_json_text(read_file(arg.substr(1)), what);
    return parse_json_text(arg, what);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string human_number(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

inline std::string human_report(const lab::CheckReport& r) {
    std::ostringstream s;
    s << (r.pass ? "PASS  " : "FAIL  ") << r.check << "  model=" << (r.model.empty() ? "-" : r.model);
    if (r.norm) s << " norm=" << *r.norm;
    s << " samples=" << r.samples << " seed=" << r.seed << " tol=" << human_number(r.tolerance)
      << " worst_margin=" << human_number(r.worst_margin) << "\n";
    s << "      " << r.anchor << "\n";
    if (r.counterexample) s << "      counterexample: " << r.counterexample->dump() << "\n";
    return s.str();
}

inline CsvTable report_rows(const std::vector<lab::CheckReport>& reports) {
    json batch = document("verify-batch");
    batch["reports"] = json::array();
    for (const auto& r : reports) batch["reports"].push_back(lab::to_json(r));
    return report_table(batch);
}

}  // namespace detail

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

// ---------------------------------------------------------------------------
// distance

struct DistanceArgs {
    std::string p;
    std::string q;
    std::string budget = "default";
};

inline int cmd_distance(const RunConfig& cfg, const DistanceArgs& a, Streams io) {
    if (!cfg.model) throw ParameterError("distance needs --model");
    const Descriptor d = parse_descriptor(*cfg.model);
    const json pj = detail::point_argument(a.p, "--p");
    const json qj = detail::point_argument(a.q, "--q");
    json out = document("distance");
    out["model"] = d.text;
    std::string human;
    CsvTable csv{{"model", "norm", "lo", "hi", "exact"}, {}};
    if (d.factor) {
        const FactorPoint p = factor_point_from_json(*d.factor, pj);
        const FactorPoint q = factor_point_from_json(*d.factor, qj);
        const double v = factor_distance(*d.factor, p, q);
        out["norm"] = nullptr;
        out["p"] = to_json(p);
        out["q"] = to_json(q);
        out["exact"] = true;
        out["value"] = v;
        human = "d = " + detail::human_number(v) + "\n";
        csv.rows.push_back({d.text, "", csv_number(v), csv_number(v), "true"});
    } else {
        const Model& model = *d.model;
        const HoroPoint p = horo_point_from_json(model, pj);
        const HoroPoint q = horo_point_from_json(model, qj);
        const AdmissibleNorm norm = AdmissibleNorm::from_name(cfg.norm.value_or("l2norm"));
        out["norm"] = norm.name();
        out["p"] = to_json(p);
        out["q"] = to_json(q);
        if (model.is_dl()) {
            const auto v = dl_distance(model, p, q);
            out["exact"] = true;
            out["value"] = v;
            human = "d = " + std::to_string(v) + "\n";
            csv.rows.push_back({d.text, norm.name(), std::to_string(v), std::to_string(v), "true"});
        } else {
            if (a.budget != "default" && a.budget != "fast") throw ParameterError("--budget must be default or fast");
            Budget b = a.budget == "fast" ? Budget::fast() : Budget{};
            b.seed = cfg.seed;
            if (cfg.tol) b.tol = *cfg.tol;
            const DistanceEstimate e = estimate_distance(model, p, q, norm, b);
            out["exact"] = false;
            out["estimate"] = to_json(e);
            human = "d in [" + detail::human_number(e.lo) + ", " + detail::human_number(e.hi) + "]  (" + e.method + ", budget " +
                    a.budget + ", seed " + std::to_string(b.seed) + (e.converged ? "" : ", not converged") + ")\n";
            csv.rows.push_back({d.text, norm.name(), csv_number(e.lo), csv_number(e.hi), "false"});
        }
    }
    switch (cfg.format) {
        case Format::json: detail::emit(cfg, detail::dump(out), io.out); break;
        case Format::csv: detail::emit(cfg, to_csv(csv), io.out); break;
        case Format::human: detail::emit(cfg, human, io.out); break;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string id;
    std::optional<int> exhaustive;
    double delta = 0.9;
    bool timing = false;
};

inline std::vector<lab::CheckReport> run_checks(const std::vector<std::string>& ids, const lab::CheckConfig& base, int jobs, bool timing) {
    std::vector<lab::CheckReport> reports(ids.size());
    std::vector<std::exception_ptr> errors(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < ids.size();) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                reports[i] = lab::run_check(ids[i], base);
                if (timing) reports[i].wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(ids.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < n; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return reports;
}

inline int cmd_verify(const RunConfig& cfg, const VerifyArgs& a, Streams io) {
    lab::CheckConfig base;
    base.model = cfg.model;
    base.norm = cfg.norm;
    base.seed = cfg.seed;
    base.samples = cfg.samples;
    base.tol = cfg.tol;
    base.exhaustive = a.exhaustive;
    base.delta = a.delta;
    const bool all = a.id == "all";
    if (all && (cfg.model || cfg.norm || cfg.samples || cfg.tol || a.exhaustive))
        throw ParameterError("verify all runs every check on its defaults; --model, --norm, --samples, --tol and --exhaustive apply to single checks");
    if (!all && !lab::find_check(a.id)) throw lab::UnknownCheckError(a.id);
    const std::vector<std::string> ids = all ? lab::check_ids() : std::vector<std::string>{a.id};
    const auto reports = run_checks(ids, base, cfg.jobs, a.timing);
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass;

    std::string text;
    switch (cfg.format) {
        case Format::json:
            if (all) {
                json batch = document("verify-batch");
                batch["seed"] = cfg.seed;
                batch["pass"] = pass;
                batch["reports"] = json::array();
                for (const auto& r : reports) batch["reports"].push_back(lab::to_json(r));
                text = detail::dump(batch);
            } else {
                text = detail::dump(lab::to_json(reports.front()));
            }
            break;
        case Format::csv: text = to_csv(detail::report_rows(reports)); break;
        case Format::human:
            for (const auto& r : reports) text += detail::human_report(r);
            if (all) text += std::string(pass ? "all checks passed" : "some checks failed") + "\n";
            break;
    }
    detail::emit(cfg, text, io.out);
    return pass ? exit_ok : exit_failure;
}

// ---------------------------------------------------------------------------
// classify

inline int cmd_classify(const RunConfig& cfg, bool probe, Streams io) {
    if (!cfg.model) throw ParameterError("classify needs --model");
    const Model model = parse_model(*cfg.model);
    const lab::ClassificationVerdict v = probe ? lab::classify_with_evidence(model) : lab::classify(model);
    std::string text;
    switch (cfg.format) {
        case Format::json: text = detail::dump(lab::to_json(v)); break;
        case Format::csv: {
            CsvTable t{{"model", "x_factor", "y_factor", "lower_boundary_x_connected", "upper_boundary_y_connected", "verdict", "probe"}, {}};
            t.rows.push_back({v.model, factor_kind_name(v.x_kind), factor_kind_name(v.y_kind), v.lower_x_connected ? "true" : "false",
                              v.upper_y_connected ? "true" : "false", lab::verdict_name(v.verdict),
                              v.probe ? lab::probe_verdict_name(v.probe->verdict) : ""});
            text = to_csv(t);
            break;
        }
        case Format::human:
            text = v.model + ": " + lab::verdict_name(v.verdict) + "\n  lower boundary of X " + (v.lower_x_connected ? "connected" : "disconnected") +
                   ", upper boundary of Y " + (v.upper_y_connected ? "connected" : "disconnected") + "\n  " + lab::verdict_statement(v.verdict) + "\n";
            if (v.probe) text += std::string("  probe: ") + lab::probe_verdict_name(v.probe->verdict) + " (" + v.probe->method + ")\n";
            break;
    }
    detail::emit(cfg, text, io.out);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// export

struct ExportArgs {
    std::string what;
    std::string grid;
    std::string feet = "0,1";
    std::optional<std::string> input;
    std::string rule = "derived";
};

inline int cmd_export(const RunConfig& cfg, const ExportArgs& a, Streams io) {
    if (cfg.format != Format::csv && cfg.format != Format::json)
        throw ParameterError("export writes CSV");
    CsvTable t;
    if (a.what == "fc") {
        double kappa = 1.0;
        if (cfg.model) {
            const Descriptor d = parse_descriptor(*cfg.model);
            if (!d.factor || !d.factor->is_heintze()) throw CapabilityError("fc sweep takes a plane factor h2-a");
            kappa = std::pow(std::log(d.factor->base), 2);
        }
        if (a.rule != "derived" && a.rule != "stated") throw ParameterError("--rule must be derived or stated");
        t = almost_vertical_sweep(parse_grid(a.grid), kappa, a.rule == "stated" ? KappaRescaling::stated : KappaRescaling::derived);
    } else if (a.what == "vertical-convergence") {
        const Descriptor d = parse_descriptor(cfg.model.value_or("h2-e"));
        if (!d.factor) throw CapabilityError("vertical-convergence sweep takes a plane factor h2-a");
        const auto feet = parse_grid(a.feet);
        if (feet.size() != 2) throw ParameterError("--feet takes two numbers");
        t = vertical_convergence_sweep(*d.factor, parse_grid(a.grid), feet[0], feet[1]);
    } else if (a.what == "report") {
        if (!a.input) throw ParameterError("export report needs --in");
        t = report_table(parse_json_text(detail::read_file(*a.input), "report"));
    } else {
        throw ParameterError("unknown export '" + a.what + "' (expected fc, vertical-convergence or report)");
    }
    detail::emit(cfg, to_csv(t), io.out);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// orbit

inline int cmd_orbit(const RunConfig& cfg, int radius, Streams io) {
    if (!cfg.model) throw ParameterError("orbit needs --model");
    const Descriptor d = parse_descriptor(*cfg.model);
    if (!d.group) throw CapabilityError("model '" + d.text + "' is not the model space of a supported group");
    if (radius < 0 || radius > 8) throw ResourceError("orbit radius must lie in [0, 8]");
    const AdmissibleNorm norm = AdmissibleNorm::from_name(cfg.norm.value_or("l2norm"));
    Budget b = Budget::fast();
    b.seed = cfg.seed;
    const groups::OrbitFit fit = groups::orbit_qi_constants(*d.group, radius, norm, b);
    json j = document("orbit");
    j["model"] = d.text;
    j["group"] = d.group->name();
    j["norm"] = norm.name();
    j["radius"] = fit.radius;
    j["ball_size"] = fit.ball_size;
    j["generators"] = fit.generators;
    j["L"] = fit.L;
    j["C"] = fit.C;
    j["max_distance"] = fit.max_distance;
    j["exact_distances"] = fit.exact_distances;
    j["budget"] = to_json(b);
    std::string text;
    switch (cfg.format) {
        case Format::json: text = detail::dump(j); break;
        case Format::csv:
            text = to_csv(CsvTable{{"model", "radius", "ball_size", "L", "C"},
                                   {{d.text, std::to_string(radius), std::to_string(fit.ball_size), csv_number(fit.L), csv_number(fit.C)}}});
            break;
        case Format::human:
            text = d.group->name() + " on " + d.text + ": |g|/L - C <= d(g.o, o) <= L|g| + C with L = " + detail::human_number(fit.L) +
                   ", C = " + detail::human_number(fit.C) + " over " + std::to_string(fit.ball_size) + " elements of radius <= " +
                   std::to_string(radius) + "\n";
            break;
    }
    detail::emit(cfg, text, io.out);
    return exit_ok;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, Streams io) {
    CLI::App app{"horocyclic products: distances, checks, classification and sweeps", "horoprod"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "json";
    std::optional<std::string> seed_text;

    auto common = [&](CLI::App* sub, bool with_norm) {
        sub->add_option("--model", cfg.model, "model descriptor, e.g. dl-2-2, h2-3_bowtie_t-3, sol, h2xmf-B(3,1,1,1)-k2");
        if (with_norm) sub->add_option("--norm", cfg.norm, "linf, l1half or l2norm");
        sub->add_option("--seed", seed_text, "random seed (default: HOROPROD_SEED, else 0)");
        sub->add_option("--out", cfg.out, "write output to this file");
        sub->add_option("--format", format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
    };

    DistanceArgs dargs;
    auto* distance = app.add_subcommand("distance", "distance between two points given as JSON (or @file)");
    common(distance, true);
    distance->add_option("--p", dargs.p, "first point")->required();
    distance->add_option("--q", dargs.q, "second point")->required();
    distance->add_option("--budget", dargs.budget, "optimizer budget: default or fast");
    distance->add_option("--tol", cfg.tol, "optimizer tolerance");

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "run a registered check (or all)");
    common(verify, true);
    verify->add_option("id", vargs.id, "check id or 'all'")->required();
    verify->add_option("--samples", cfg.samples, "sample count");
    verify->add_option("--tol", cfg.tol, "tolerance");
    verify->add_option("--exhaustive", vargs.exhaustive, "radius for exhaustive graph enumeration");
    verify->add_option("--delta", vargs.delta, "thin-triangle constant for plane checks");
    verify->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 64));
    verify->add_flag("--timing", vargs.timing, "include wall time (reports are then no longer reproducible)");

    bool probe = true;
    auto* classify = app.add_subcommand("classify", "boundary connectivity and the resulting verdict");
    common(classify, false);
    classify->add_flag("!--no-probe", probe, "skip the horosphere probe");

    ExportArgs eargs;
    auto* exportc = app.add_subcommand("export", "CSV plot data");
    common(exportc, false);
    exportc->add_option("what", eargs.what, "fc, vertical-convergence or report")->required();
    exportc->add_option("--grid", eargs.grid, "comma list or start:end:count; empty gives a header-only file");
    exportc->add_option("--feet", eargs.feet, "two feet for vertical-convergence");
    exportc->add_option("--in", eargs.input, "report JSON for 'export report'");
    exportc->add_option("--rule", eargs.rule, "curvature rescaling of f(C): derived or stated");

    int radius = 3;
    auto* orbit = app.add_subcommand("orbit", "quasi-isometry constants of the orbit map on a Cayley ball");
    common(orbit, true);
    orbit->add_option("--radius", radius, "Cayley ball radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        io.err << "horoprod: " << e.what() << "\n";
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) io.err << "run 'horoprod " << sub->get_name() << " --help' for usage\n";
        return exit_usage;
    }

    // export defaults to CSV; the others to JSON
    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    if (active->count("--format") == 0) format = cfg.command == "export" ? "csv" : "json";
    cfg.format = format == "csv" ? Format::csv : format == "human" ? Format::human : Format::json;

    try {
        if (seed_text) {
            cfg.seed = std::stoull(*seed_text);
        } else if (const char* env = std::getenv("HOROPROD_SEED"); env && *env) {
            cfg.seed = std::stoull(env);
        }
    } catch (const std::exception&) {
        io.err << "horoprod: seed must be an unsigned integer\n";
        return exit_usage;
    }

    if (cfg.model) {
        try {
            (void)parse_descriptor(*cfg.model);
        } catch (const ParseError& e) {
            const std::size_t at = std::min(e.position(), cfg.model->size());
            io.err << "horoprod: bad model descriptor: " << e.what() << "\n  " << *cfg.model << "\n  " << std::string(at, ' ')
                   << std::string(std::max<std::size_t>(1, e.length()), '^') << "\n";
            return exit_usage;
        }
    }

    try {
        if (cfg.command == "distance") return cmd_distance(cfg, dargs, io);
        if (cfg.command == "verify") return cmd_verify(cfg, vargs, io);
        if (cfg.command == "classify") return cmd_classify(cfg, probe, io);
        if (cfg.command == "export") return cmd_export(cfg, eargs, io);
        return cmd_orbit(cfg, radius, io);
    } catch (const IoError& e) {
        io.err << "horoprod: " << e.what() << "\n";
        return exit_io;
    } catch (const lab::UnknownCheckError& e) {
        io.err << "horoprod: " << e.what() << "\nregistered checks:\n";
        for (const auto& id : lab::check_ids()) io.err << "  " << id << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        io.err << "horoprod: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        io.err << "horoprod: " << e.what() << "\n";
        return exit_usage;
    } catch (const json::exception& e) {
        io.err << "horoprod: " << e.what() << "\n";
        return exit_usage;
    }
}

inline int run(int argc, const char* const* argv) { return run(argc, argv, Streams{std::cout, std::cerr}); }

}  // namespace horoprod::cli
