#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include <horoprod/descriptor.hpp>
#include <horoprod/distance.hpp>
#include <horoprod/dl_graph.hpp>
#include <horoprod/dymarz.hpp>
#include <horoprod/export.hpp>
#include <horoprod/sampling.hpp>
#include <horoprod/serialize.hpp>

using namespace horoprod;

namespace {

const double e = std::numbers::e;

TreePoint root_point(int m) { return TreePoint(TreeVertex::root(m)); }

// Oracle: BFS over pairs (x, y) of tree vertices with the DL edges
// (up in X, down in Y) and (down in X, up in Y). Uses only parent/child.
std::map<std::pair<TreeVertex, TreeVertex>, int> dl_bfs(int m, int n, int r) {
    const auto start = std::make_pair(TreeVertex::root(m), TreeVertex::root(n));
    std::map<std::pair<TreeVertex, TreeVertex>, int> dist{{start, 0}};
    std::deque<std::pair<TreeVertex, TreeVertex>> q{start};
    while (!q.empty()) {
        const auto v = q.front();
        q.pop_front();
        const int d = dist[v];
        if (d == r) continue;
        auto visit = [&](std::pair<TreeVertex, TreeVertex> w) {
            if (dist.emplace(w, d + 1).second) q.push_back(std::move(w));
        };
        for (int j = 0; j < n; ++j) visit({tree_parent(v.first), tree_child(v.second, j)});
        for (int i = 0; i < m; ++i) visit({tree_child(v.first, i), tree_parent(v.second)});
    }
    return dist;
}

HoroPoint dl_pt(const TreeVertex& x, const TreeVertex& y) { return HoroPoint{TreePoint(x), TreePoint(y)}; }

}  // namespace

// ---------------------------------------------------------------------------
// norms

TEST(AdmissibleNorm, BuiltinsPassCertificates) {
    for (const auto& n : builtin_norms()) {
        const NormCertificate c = n.certify();
        EXPECT_TRUE(c.passes()) << n.name();
        EXPECT_NEAR(n(1, 1), 1.0, 1e-12) << n.name();
    }
}

TEST(AdmissibleNorm, BadNormsFailTheRightCertificate) {
    const auto third = AdmissibleNorm::unchecked("third", [](double a, double b) { return (a + b) / 3; }).certify();
    EXPECT_FALSE(third.normalized);
    const auto small = AdmissibleNorm::unchecked("0.4", [](double a, double b) { return 0.4 * (a + b); }).certify();
    EXPECT_FALSE(small.admissible);
    EXPECT_THROW(AdmissibleNorm::custom("third", [](double a, double b) { return (a + b) / 3; }), ParameterError);
}

TEST(AdmissibleNorm, FromName) {
    EXPECT_EQ(AdmissibleNorm::from_name("linf").tag(), NormTag::linf);
    EXPECT_EQ(AdmissibleNorm::from_name("l1half").tag(), NormTag::l1half);
    EXPECT_EQ(AdmissibleNorm::from_name("l2norm").tag(), NormTag::l2norm);
    EXPECT_THROW(AdmissibleNorm::from_name("l3"), ParameterError);
    EXPECT_DOUBLE_EQ(AdmissibleNorm::l2norm()(3, 4), std::sqrt(12.5));
}

// ---------------------------------------------------------------------------
// points and paths

TEST(HoroPoint, HeightConstraint) {
    const Model m = parse_model("h2-2_bowtie_t-2");
    EXPECT_NO_THROW(check_horo_point(m, HoroPoint{HPoint::at_height(0, 1, 2), TreePoint(TreeVertex(2, -1))}));
    EXPECT_THROW(check_horo_point(m, HoroPoint{HPoint::at_height(0, 1, 2), TreePoint(TreeVertex(2, 1))}), StructureError);
    const Model dl = Model::diestel_leader(2, 2);
    EXPECT_THROW(check_horo_point(dl, dl_pt(TreeVertex(2, 1), TreeVertex(2, 0))), StructureError);
}

TEST(MfPoint, SameSignHeights) {
    EXPECT_NO_THROW(MfPoint(HPoint::at_height(0, -2, 3), TreePoint(TreeVertex(2, -2))));
    EXPECT_THROW(MfPoint(HPoint::at_height(0, 2, 3), TreePoint(TreeVertex(2, -2))), StructureError);
}

TEST(PathLength, SingleWaypointIsZero) {
    const Model m = Model::diestel_leader(2, 2);
    const HoroPath p = HoroPath::uniform(m, {dl_pt(TreeVertex::root(2), TreeVertex::root(2))}, SegmentRule::horospherical);
    EXPECT_EQ(path_length(p, AdmissibleNorm::l2norm(), 8), 0.0);
}

TEST(PathLength, VerticalSegmentHasLengthHeightChange) {
    const Model m = parse_model("h2-e_bowtie_h2-2");
    const HoroPoint a = plane_pair(m, 0.3, -1.0, -1.0);
    const HoroPoint b = plane_pair(m, 0.3, -1.0, 2.5);
    for (const auto& n : builtin_norms())
        EXPECT_NEAR(path_length(HoroPath::uniform(m, {a, b}, SegmentRule::lead_x), n, 16), 3.5, 1e-12) << n.name();
}

TEST(PathLength, ThreeEdgesInDL) {
    const Model m = Model::diestel_leader(2, 2);
    const TreeVertex r = TreeVertex::root(2);
    const TreeVertex g = tree_parent(tree_parent(r));
    const HoroPoint p0 = dl_pt(r, r);
    const HoroPoint p1 = dl_pt(tree_parent(r), tree_child(r, 0));
    const HoroPoint p2 = dl_pt(g, tree_child(tree_child(r, 0), 1));
    const HoroPoint p3 = dl_pt(tree_child(g, 1), tree_child(r, 0));
    ASSERT_EQ(dl_distance(m, p0, p3), 3);
    const HoroPath path = HoroPath::uniform(m, {p0, p1, p2, p3}, SegmentRule::lead_x);
    for (const auto& n : builtin_norms()) EXPECT_NEAR(path_length(path, n, 2), 3.0, 1e-12) << n.name();
}

TEST(PathLength, MonotoneInRefinement) {
    numerics::Rng rng(31);
    const Model m = parse_model("h2-2_bowtie_t-2");
    for (int i = 0; i < 30; ++i) {
        const HoroPath path = witness_path(m, random_horo_point(rng, m, 2), random_horo_point(rng, m, 2));
        double prev = 0;
        for (int r = 1; r <= 256; r *= 2) {
            const double l = path_length(path, AdmissibleNorm::l2norm(), r);
            EXPECT_GE(l, prev - 1e-12);
            prev = l;
        }
    }
}

TEST(PathLength, InvalidPathThrows) {
    const Model m = Model::diestel_leader(2, 2);
    const HoroPath bad(m, {dl_pt(TreeVertex::root(2), TreeVertex::root(2))}, {SegmentRule::lead_x});
    EXPECT_THROW(path_length(bad, AdmissibleNorm::linf(), 4), StructureError);
    EXPECT_THROW(path_length(HoroPath::uniform(m, {}, SegmentRule::lead_x), AdmissibleNorm::linf(), 0), ParameterError);
}

// ---------------------------------------------------------------------------
// bounds and estimates

TEST(UpperBound, Examples) {
    const Model m = Model::diestel_leader(2, 2);
    const TreeVertex r = TreeVertex::root(2);
    EXPECT_EQ(upper_bound_distance(m, dl_pt(r, r), dl_pt(r, r)), 0.0);
    const HoroPoint q = dl_pt(tree_child(tree_child(tree_parent(r), 1), 0), tree_parent(r));
    ASSERT_EQ(dist_x(m, dl_pt(r, r), q), 3.0);
    ASSERT_EQ(dist_y(m, dl_pt(r, r), q), 1.0);
    EXPECT_EQ(upper_bound_distance(m, dl_pt(r, r), q), 5.0);

    // d_X = 3, d_Y = 2 gives 3 + 2 + 2
    const Model bs = parse_model("h2-2_bowtie_t-2");
    const double dx = 2 * std::sinh(3 * std::log(2.0) / 2);
    const HoroPoint a = plane_tree(bs, 0, TreePoint(tree_child(tree_parent(r), 1)));
    const HoroPoint b = plane_tree(bs, dx, TreePoint(r));
    ASSERT_NEAR(dist_x(bs, a, b), 3.0, 1e-12);
    ASSERT_EQ(dist_y(bs, a, b), 2.0);
    EXPECT_NEAR(upper_bound_distance(bs, a, b), 7.0, 1e-12);
}

TEST(LowerBound, Examples) {
    const Model m = Model::diestel_leader(2, 2);
    const TreeVertex r = TreeVertex::root(2);
    EXPECT_EQ(lower_bound_distance(m, dl_pt(r, r), dl_pt(r, r), AdmissibleNorm::linf()), 0.0);
    // siblings in both trees
    const HoroPoint p = dl_pt(tree_child(tree_parent(r), 1), tree_child(tree_parent(r), 1));
    const HoroPoint q = dl_pt(r, r);
    ASSERT_EQ(dist_x(m, p, q), 2.0);
    ASSERT_EQ(dist_y(m, p, q), 2.0);
    EXPECT_EQ(lower_bound_distance(m, p, q, AdmissibleNorm::l1half()), 2.0);
    EXPECT_EQ(dl_distance(m, p, q), 4);
    EXPECT_EQ(dl_bfs(2, 2, 4).at({tree_child(tree_parent(r), 1), tree_child(tree_parent(r), 1)}), 4);
}

TEST(LowerBound, VerticalPairIsExact) {
    const Model m = parse_model("h2-2_bowtie_t-2");
    const HoroPoint p = plane_tree(m, 0.5, TreePoint(TreeVertex(2, 2)));
    const HoroPoint q = plane_tree(m, 0.5, TreePoint(TreeVertex(2, -3, {{2, 1}})));
    EXPECT_GE(lower_bound_distance(m, p, q, AdmissibleNorm::l2norm()), 5.0);
    const DistanceEstimate d = estimate_distance(m, p, q, AdmissibleNorm::l2norm(), Budget{});
    EXPECT_NEAR(d.lo, 5.0, 1e-12);
    EXPECT_NEAR(d.hi, 5.0, 1e-9);
}

TEST(EstimateDistance, Examples) {
    const Model m = parse_model("h2-2_bowtie_t-2");
    const HoroPoint p = plane_tree(m, 0.5, root_point(2));
    const DistanceEstimate z = estimate_distance(m, p, p, AdmissibleNorm::linf(), Budget{});
    EXPECT_EQ(z.lo, 0.0);
    EXPECT_EQ(z.hi, 0.0);
    const Model hh = parse_model("h2-e_bowtie_h2-e");
    const DistanceEstimate v = estimate_distance(hh, plane_pair(hh, 1, 2, 0), plane_pair(hh, 1, 2, 3), AdmissibleNorm::l1half(), Budget{});
    EXPECT_NEAR(v.lo, 3.0, 1e-12);
    EXPECT_LE(v.hi, 3.0 + 1e-6);
}

TEST(EstimateDistance, SandwichOnAllModelsAndNorms) {
    for (const char* desc : {"dl-2-2", "h2-2_bowtie_t-2", "sol", "h2-2_bowtie_h2-2[2]"}) {
        const Model m = parse_model(desc);
        for (const auto& n : builtin_norms()) {
            numerics::Rng rng(numerics::derive_seed(17, std::hash<std::string>{}(std::string(desc) + n.name())));
            for (int i = 0; i < 8; ++i) {
                const HoroPoint p = random_horo_point(rng, m, 2), q = random_horo_point(rng, m, 2);
                const DistanceEstimate d = estimate_distance(m, p, q, n, Budget::fast());
                EXPECT_LE(lower_bound_distance(m, p, q, n), d.hi + 1e-12) << desc;
                EXPECT_LE(d.lo, d.hi) << desc;
                EXPECT_LE(d.hi, upper_bound_distance(m, p, q) + 1e-6) << desc;
                EXPECT_FALSE(d.clamped) << desc;
            }
        }
    }
}

TEST(EstimateDistance, Deterministic) {
    const Model m = parse_model("sol");
    numerics::Rng rng(2);
    const HoroPoint p = random_horo_point(rng, m, 2), q = random_horo_point(rng, m, 2);
    Budget b = Budget::fast();
    b.seed = 99;
    const auto a1 = estimate_distance(m, p, q, AdmissibleNorm::l2norm(), b);
    const auto a2 = estimate_distance(m, p, q, AdmissibleNorm::l2norm(), b);
    EXPECT_EQ(a1.hi, a2.hi);
    EXPECT_EQ(a1.lo, a2.lo);
    EXPECT_EQ(a1.evaluations, a2.evaluations);
}

TEST(EstimateDistance, WitnessWithinUpperBound) {
    numerics::Rng rng(24);
    for (const char* desc : {"dl-2-3", "h2-3_bowtie_t-3", "h2-e_bowtie_h2-2"}) {
        const Model m = parse_model(desc);
        for (int i = 0; i < 20; ++i) {
            const HoroPoint p = random_horo_point(rng, m, 2), q = random_horo_point(rng, m, 2);
            const auto w = upper_bound_with_witness(m, p, q, AdmissibleNorm::l2norm(), 64);
            EXPECT_LE(w.witness_length, w.bound + 1e-9) << desc;
        }
    }
}

// ---------------------------------------------------------------------------
// Diestel-Leader graphs

TEST(DLDistance, Examples) {
    const Model m = Model::diestel_leader(2, 2);
    const TreeVertex r = TreeVertex::root(2);
    EXPECT_EQ(dl_distance(m, dl_pt(r, r), dl_pt(r, r)), 0);
    EXPECT_EQ(dl_distance(m, dl_pt(r, r), dl_pt(tree_parent(r), tree_child(r, 1))), 1);
    EXPECT_THROW(dl_distance(parse_model("h2-2_bowtie_t-2"), plane_tree(parse_model("h2-2_bowtie_t-2"), 0, root_point(2)),
                             plane_tree(parse_model("h2-2_bowtie_t-2"), 0, root_point(2))),
                 ModelError);
}

TEST(DLDistance, MatchesPairBfsOracle) {
    for (auto [mm, nn, rad] : {std::tuple{2, 2, 6}, {2, 3, 5}, {3, 3, 4}}) {
        const Model m = Model::diestel_leader(mm, nn);
        const TreeVertex rx = TreeVertex::root(mm), ry = TreeVertex::root(nn);
        const auto oracle = dl_bfs(mm, nn, rad);
        for (const auto& [v, d] : oracle) ASSERT_EQ(dl_distance(m, dl_pt(rx, ry), dl_pt(v.first, v.second)), d);
    }
}

TEST(DLBall, CertificateRadiusFour) {
    for (auto [mm, nn] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
        const DLCertificate c = certify_dl_distance(mm, nn, 4);
        EXPECT_TRUE(c.passed());
        EXPECT_GT(c.pairs, 0);
    }
}

TEST(DLBall, GraphDistanceIsNormIndependent) {
    const Model m = Model::diestel_leader(2, 3);
    numerics::Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const HoroPoint p = random_horo_point(rng, m, 3), q = random_horo_point(rng, m, 3);
        const auto d = static_cast<double>(dl_distance(m, p, q));
        for (const auto& n : builtin_norms()) {
            EXPECT_LE(lower_bound_distance(m, p, q, n), d);
            EXPECT_LE(d, upper_bound_distance(m, p, q));
            EXPECT_EQ(estimate_distance(m, p, q, n).hi, d);
        }
    }
}

// ---------------------------------------------------------------------------
// d' metric

TEST(DPrime, Examples) {
    const auto n = AdmissibleNorm::l2norm();
    const HPoint a = HPoint::at_height(0.2, -1, 2), b = HPoint::at_height(0.2, 2, 2);
    const auto v = d_prime_estimate(a, b, n);
    EXPECT_NEAR(v.hi, h_distance(a, b), 1e-9);
    EXPECT_EQ(d_prime_estimate(a, a, n).hi, 0.0);
}

TEST(DPrime, BelowDxAndEqualForLinf) {
    numerics::Rng rng(51);
    for (int i = 0; i < 12; ++i) {
        const HPoint a = HPoint::at_height(rng.uniform(-3, 3), rng.uniform(-2, 2), 2);
        const HPoint b = HPoint::at_height(rng.uniform(-3, 3), rng.uniform(-2, 2), 2);
        const double d = h_distance(a, b);
        EXPECT_LE(d_prime_estimate(a, b, AdmissibleNorm::l2norm()).hi, d + 1e-6);
        EXPECT_NEAR(d_prime_estimate(a, b, AdmissibleNorm::linf()).hi, d, 1e-6);
    }
}

TEST(Ldpx, Examples) {
    EXPECT_DOUBLE_EQ(ldpx_lower_bound(0, 0, 1, 0), 0.5);
    EXPECT_DOUBLE_EQ(ldpx_lower_bound(3, 0, 1, 0), 6.5);
    // the exponential term at 2d is the square of the term at d times 2^{(C+2)/(2δ)}
    const double d = 3.0, delta = 1.0, c = 0.0;
    const double t1 = ldpx_lower_bound(0, d, delta, c) + 5 * d + c;
    const double t2 = ldpx_lower_bound(0, 2 * d, delta, c) + 10 * d + c;
    EXPECT_NEAR(t2, t1 * t1 * std::exp2((c + 2) / (2 * delta)), 1e-9);
    EXPECT_THROW(ldpx_lower_bound(0, 0, 0, 0), ParameterError);
}

// ---------------------------------------------------------------------------
// Dymarz map

TEST(Dymarz, Examples) {
    const DymarzSpace s{2.0, 3.0, 2};
    const TreePoint v0 = root_point(2);
    const HoroPoint p = dymarz_map(s, FiberedPoint{0, 0, 0, v0});
    EXPECT_EQ(std::get<HPoint>(p.x), HPoint::at_height(0, 0, 2));
    EXPECT_EQ(std::get<MfPoint>(p.y).sheet, v0);

    const TreePoint v(TreeVertex(2, -3, {{2, 1}}));
    const HoroPoint q = dymarz_map(s, FiberedPoint{1, 2, 3, v});
    const auto& x = std::get<HPoint>(q.x);
    const auto& w = std::get<MfPoint>(q.y);
    EXPECT_EQ(x.x(), 1.0);
    EXPECT_EQ(x.height(), 3.0);
    EXPECT_EQ(w.plane.x(), 2.0);
    EXPECT_EQ(w.height(), -3.0);
    EXPECT_EQ(w.sheet, v);
    EXPECT_THROW(dymarz_map(s, FiberedPoint{0, 0, 1, v0}), StructureError);
}

TEST(Dymarz, RoundTripExact) {
    const DymarzSpace s{2.0, 2.0, 3};
    numerics::Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        const TreePoint v(random_tree_vertex(rng, 3, rng.integer(-3, 3), 4), rng.uniform01() * 0.99);
        const FiberedPoint f{rng.uniform(-3, 3), rng.uniform(-3, 3), -v.height(), v};
        ASSERT_EQ(dymarz_inverse(s, dymarz_map(s, f)), f);
    }
}

TEST(Dymarz, GroupCoordinateDistanceMatchesPlane) {
    numerics::Rng rng(62);
    for (int i = 0; i < 200; ++i) {
        const double n = rng.uniform(-3, 3), t = rng.uniform(-2, 2), n2 = rng.uniform(-3, 3), t2 = rng.uniform(-2, 2);
        EXPECT_NEAR(heintze_group_distance(n, t, n2, t2, 3.0), h_distance(HPoint::at_height(n, t, 3), HPoint::at_height(n2, t2, 3)), 1e-11);
    }
}

// ---------------------------------------------------------------------------
// descriptors and serialization

TEST(Descriptor, Grammar) {
    EXPECT_TRUE(parse_model("dl-2-3").is_dl());
    const Model bs = parse_model("h2-3_bowtie_t-3");
    EXPECT_TRUE(bs.x.is_heintze());
    EXPECT_EQ(bs.x.base, 3.0);
    EXPECT_EQ(parse_model("h2-3⋈t-3"), bs);
    EXPECT_EQ(parse_descriptor("h2-e").factor->base, e);
    EXPECT_TRUE(parse_descriptor("h2-2[3]").factor->is_millefeuille());
    const Model sol = parse_model("sol-2-1-1-1");
    EXPECT_EQ(sol, parse_model("sol-A(2,1,1,1)"));
    EXPECT_NEAR(sol.x.base, (3 + std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_TRUE(parse_model("h2xmf-B(3,1,1,1)-k2").y.is_millefeuille());
    EXPECT_TRUE(parse_descriptor("sol").group.has_value());
}

TEST(Descriptor, ErrorsCarrySpans) {
    try {
        parse_model("h2-3_bowtie_q-3");
        FAIL();
    } catch (const ParseError& err) {
        EXPECT_EQ(err.position(), 12u);
    }
    EXPECT_THROW(parse_model(""), ParseError);
    EXPECT_THROW(parse_model("dl-2-1"), ParseError);
    EXPECT_THROW(parse_model("h2-2"), ParseError);
    EXPECT_THROW(parse_model("sol-1-0-0-1"), ParseError);
    EXPECT_THROW(parse_model("dl-2-2x"), ParseError);
}

TEST(Serialize, PointRoundTrip) {
    numerics::Rng rng(71);
    for (const char* desc : {"dl-2-3", "h2-3_bowtie_t-3", "sol", "h2xmf-B(3,1,1,1)-k2"}) {
        const Model m = parse_model(desc);
        for (int i = 0; i < 20; ++i) {
            const HoroPoint p = random_horo_point(rng, m, 2);
            const json j = to_json(p);
            EXPECT_EQ(horo_point_from_json(m, parse_json_text(j.dump(), "p")), p) << desc;
        }
    }
}

TEST(Serialize, RejectsUnknownFieldsAndBadJson) {
    const Factor f = Factor::heintze(e);
    EXPECT_THROW(factor_point_from_json(f, json{{"kind", "h2"}, {"x", 0}, {"y", 1}, {"z", 2}}), ParseError);
    EXPECT_THROW(factor_point_from_json(f, json{{"kind", "h3"}, {"x", 0}, {"y", 1}}), ParseError);
    EXPECT_THROW(factor_point_from_json(f, json{{"kind", "h2"}, {"x", "0"}, {"y", 1}}), ParseError);
    EXPECT_THROW(parse_json_text("{", "p"), ParseError);
    // "y" is the upper-half-plane coordinate
    EXPECT_NEAR(std::get<HPoint>(factor_point_from_json(f, json{{"kind", "h2"}, {"x", 0}, {"y", e}})).height(), 1.0, 1e-15);
}

TEST(Csv, RoundTrip) {
    CsvTable t{{"a", "b,c", "q\"uote"}, {{"1", "x,y", ""}, {"-2.5", "\"", "line"}}};
    const CsvTable back = parse_csv(to_csv(t));
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(parse_csv("C,f\n").rows.size(), 0u);
}

TEST(Csv, Sweeps) {
    const CsvTable fc = almost_vertical_sweep({0, 1, 2});
    ASSERT_EQ(fc.rows.size(), 3u);
    EXPECT_EQ(std::stod(fc.rows[0][1]), 0.0);
    EXPECT_DOUBLE_EQ(std::stod(fc.rows[1][1]), std::acosh(std::exp(0.5)));
    EXPECT_DOUBLE_EQ(std::stod(fc.rows[2][1]), std::acosh(e));
    EXPECT_TRUE(almost_vertical_sweep({}).rows.empty());
    const CsvTable vc = vertical_convergence_sweep(Factor::heintze(e), {0, 10, 30}, 0, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        const double t = std::stod(vc.rows[i][0]);
        EXPECT_NEAR(std::stod(vc.rows[i][1]), 2 * std::asinh(std::exp(-t) / 2), 1e-15);
        if (i) EXPECT_LT(std::stod(vc.rows[i][1]), std::stod(vc.rows[i - 1][1]));
    }
    EXPECT_EQ(parse_grid("0:1:5").size(), 5u);
    EXPECT_THROW(parse_grid("0,x"), ParseError);
}
