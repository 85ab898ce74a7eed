#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <horoprod/descriptor.hpp>
#include <horoprod/lab/boundary.hpp>
#include <horoprod/lab/checks.hpp>
#include <horoprod/lab/classify.hpp>
#include <horoprod/lab/delta.hpp>
#include <horoprod/lab/probe.hpp>

using namespace horoprod;
using namespace horoprod::lab;

// ---------------------------------------------------------------------------
// registry

class EveryCheck : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryCheck, PassesWithDefaults) {
    CheckConfig cfg;
    cfg.seed = 7;
    const CheckReport r = run_check(GetParam(), cfg);
    EXPECT_TRUE(r.pass) << to_json(r).dump(2);
    EXPECT_EQ(r.check, GetParam());
    EXPECT_FALSE(r.anchor.empty());
    EXPECT_FALSE(r.wall_seconds.has_value());
    EXPECT_FALSE(r.counterexample.has_value());
}

INSTANTIATE_TEST_SUITE_P(Registry, EveryCheck, ::testing::ValuesIn(check_ids()),
                         [](const auto& info) {
                             std::string s = info.param;
                             for (char& c : s)
                                 if (c == '-') c = '_';
                             return s;
                         });

TEST(Registry, IdsAreUniqueAndLookupWorks) {
    const auto ids = check_ids();
    EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
    EXPECT_EQ(ids.size(), 24u);
    for (const auto& id : ids) EXPECT_NE(find_check(id), nullptr);
    EXPECT_EQ(find_check("no-such-check"), nullptr);
    EXPECT_THROW(run_check("no-such-check", {}), UnknownCheckError);
}

TEST(Registry, SameSeedSameReport) {
    CheckConfig cfg;
    cfg.seed = 1234;
    cfg.samples = 30;
    for (const char* id : {"distance-upper-bound", "action-isometry", "height-homomorphism"}) {
        const json a = to_json(run_check(id, cfg)), b = to_json(run_check(id, cfg));
        EXPECT_EQ(a.dump(), b.dump()) << id;
    }
}

TEST(Registry, ConfigValidation) {
    CheckConfig bad_samples;
    bad_samples.samples = -1;
    EXPECT_THROW(run_check("right-triangle", bad_samples), ParameterError);
    CheckConfig bad_tol;
    bad_tol.tol = -1e-3;
    EXPECT_THROW(run_check("right-triangle", bad_tol), ParameterError);
    CheckConfig model_on_modelless;
    model_on_modelless.model = "dl-2-2";
    EXPECT_THROW(run_check("right-triangle", model_on_modelless), CapabilityError);
    CheckConfig bad_model;
    bad_model.model = "dl-2";
    EXPECT_THROW(run_check("dl-exact", bad_model), ParseError);
    CheckConfig wrong_kind;
    wrong_kind.model = "dl-2-2";
    EXPECT_THROW(run_check("britton-roundtrip", wrong_kind), CapabilityError);
}

TEST(Registry, AlternativeModelsAndNorms) {
    struct Case {
        const char* id;
        const char* model;
        const char* norm;
    };
    for (const Case& c : {Case{"distance-upper-bound", "sol", "linf"}, Case{"distance-upper-bound", "h2-2_bowtie_t-2", "l1half"},
                          Case{"height-homomorphism", "sol", nullptr}, Case{"height-homomorphism", "h2xmf-B(3,1,1,1)-k2", nullptr},
                          Case{"britton-roundtrip", "h2xmf-B(3,1,1,1)-k2", nullptr}, Case{"dl-exact", "dl-2-3", nullptr}}) {
        CheckConfig cfg;
        cfg.model = c.model;
        if (c.norm) cfg.norm = c.norm;
        cfg.samples = 40;
        const CheckReport r = run_check(c.id, cfg);
        EXPECT_TRUE(r.pass) << c.id << " " << c.model;
        EXPECT_EQ(r.model, c.model);
    }
}

TEST(Registry, ExhaustiveUpperBound) {
    CheckConfig cfg;
    cfg.exhaustive = 5;
    const CheckReport r = run_check("distance-upper-bound", cfg);
    EXPECT_TRUE(r.pass);
    EXPECT_GT(r.samples, 100);
}

TEST(WorstCase, FailureCarriesCounterexample) {
    CheckReport r;
    WorstCase w;
    w.record(0.5, [] { return json{{"i", 0}}; });
    w.record(-0.25, [] { return json{{"i", 1}}; });
    w.record(0.1, [] { return json{{"i", 2}}; });
    conclude(r, w, w.margin() >= 0.0);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.worst_margin, -0.25);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_EQ((*r.counterexample)["i"], 1);
    EXPECT_THROW(w.record(std::nan(""), [] { return json{}; }), Error);
}

// ---------------------------------------------------------------------------
// thin triangles, probes, classification, boundary

TEST(Delta, PlaneBelowIdealTriangleConstant) {
    const double ideal = std::log(1 + std::sqrt(2.0));
    const DeltaEstimate d = estimate_delta(Factor::heintze(std::numbers::e), 60, 4.0, 3);
    EXPECT_LE(d.value, ideal + 1e-6);
    EXPECT_GT(d.value, 0.3);
    // base a divides by ln a
    const DeltaEstimate d2 = estimate_delta(Factor::heintze(2.0), 60, 4.0, 3);
    EXPECT_NEAR(d2.value, d.value / std::log(2.0), 1e-12);
    EXPECT_EQ(estimate_delta(Factor::tree(3, 1.0), 1, 1.0).value, 0.0);
    EXPECT_THROW(estimate_delta(Factor::heintze(2.0), 0, 1.0), ParameterError);
}

TEST(Probe, TreeTreeObstructed) {
    const Model m = Model::diestel_leader(2, 2);
    const auto [w, o] = default_witnesses(m);
    const ProbeResult r = horosphere_connectivity_probe(m, 1.0, w, o);
    EXPECT_EQ(r.verdict, ProbeVerdict::obstructed);
    EXPECT_TRUE(r.chain.empty());
}

TEST(Probe, PlaneTreeConnectedBelow) {
    const Model m = parse_model("h2-2_bowtie_t-2");
    const auto [w, o] = default_witnesses(m);
    const ProbeOptions opt;
    const ProbeResult r = horosphere_connectivity_probe(m, 3 * opt.mesh, w, o, opt);
    ASSERT_EQ(r.verdict, ProbeVerdict::connected_below);
    ASSERT_GE(r.chain.size(), 2u);
    EXPECT_EQ(r.chain.front(), w);
    EXPECT_EQ(r.chain.back(), o);
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
        EXPECT_LE(horo_height(m, r.chain[i]), 1e-12);
        if (i) EXPECT_LE(estimate_distance(m, r.chain[i - 1], r.chain[i], AdmissibleNorm::l2norm()).hi, r.step + 1e-9);
    }
}

TEST(Probe, RejectsUnsupportedModels) {
    const Model m = parse_model("sol");
    const HoroPoint p = plane_pair(m, 0, 0, 0);
    EXPECT_THROW(horosphere_connectivity_probe(m, 1.0, p, p), CapabilityError);
}

TEST(Classify, TrichotomyRows) {
    EXPECT_EQ(classify(parse_model("dl-2-2")).verdict, Verdict::not_finitely_presented);
    EXPECT_EQ(classify(parse_model("dl-3-3")).verdict, Verdict::not_finitely_presented);
    EXPECT_EQ(classify(parse_model("h2-2_bowtie_t-2")).verdict, Verdict::ascending_hnn);
    EXPECT_EQ(classify(parse_model("h2xmf-B(3,1,1,1)-k2")).verdict, Verdict::ascending_hnn);
    EXPECT_EQ(classify(parse_model("sol")).verdict, Verdict::virtually_semidirect);
    EXPECT_EQ(classify(parse_model("h2-e_bowtie_h2-2")).verdict, Verdict::virtually_semidirect);
}

TEST(Classify, EvidenceAgreesWithVerdict) {
    const auto dl = classify_with_evidence(parse_model("dl-2-2"));
    ASSERT_TRUE(dl.probe.has_value());
    EXPECT_EQ(dl.probe->verdict, ProbeVerdict::obstructed);
    const auto bs = classify_with_evidence(parse_model("h2-3_bowtie_t-3"));
    ASSERT_TRUE(bs.probe.has_value());
    EXPECT_EQ(bs.probe->verdict, ProbeVerdict::connected_below);
    EXPECT_FALSE(classify_with_evidence(parse_model("sol")).probe.has_value());
    const json j = to_json(dl);
    EXPECT_EQ(j["verdict"], "not-finitely-presented");
}

TEST(Boundary, TurnsStayBounded) {
    const TurnProfile r3 = geodesic_turn_profile(2, 2, 3);
    const TurnProfile r5 = geodesic_turn_profile(2, 2, 5);
    EXPECT_LE(r5.max_turns, 2);
    EXPECT_LE(r3.max_turns, r5.max_turns);
    EXPECT_GT(r5.targets, r3.targets);
    EXPECT_EQ(geodesic_turn_profile(2, 2, 0).max_turns, 0);
    EXPECT_THROW(geodesic_turn_profile(2, 2, 8), ResourceError);
}
