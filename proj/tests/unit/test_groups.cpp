#include <gtest/gtest.h>

#include <cmath>

#include <horoprod/distance.hpp>
#include <horoprod/groups/britton.hpp>
#include <horoprod/groups/group.hpp>
#include <horoprod/groups/orbit.hpp>
#include <horoprod/sampling.hpp>

using namespace horoprod;
using namespace horoprod::groups;

namespace {

std::vector<Group> all_groups() {
    return {Group::lamplighter(2), Group::lamplighter(3), Group::baumslag_solitar(2), Group::baumslag_solitar(3), Group::sol(),
            Group::hnn()};
}

GroupElement random_element(numerics::Rng& rng, const Group& g, int len) {
    const auto gens = g.generators();
    GroupElement e = g.identity();
    for (int i = 0; i < len; ++i) {
        const auto& s = gens[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(gens.size()) - 1))].element;
        e = multiply(e, rng.coin() ? s : inverse(s));
    }
    return e;
}

bool same(const GroupElement& a, const GroupElement& b) { return to_string(a) == to_string(b); }

double separation(const Model& m, const HoroPoint& p, const HoroPoint& q) { return dist_x(m, p, q) + dist_y(m, p, q); }

}  // namespace

TEST(GroupLaw, IdentityAndInverses) {
    numerics::Rng rng(1);
    for (const auto& g : all_groups()) {
        const GroupElement e = g.identity();
        for (int i = 0; i < 100; ++i) {
            const GroupElement x = random_element(rng, g, 8);
            EXPECT_TRUE(same(multiply(e, x), x)) << g.name();
            EXPECT_TRUE(same(multiply(x, e), x)) << g.name();
            EXPECT_TRUE(same(multiply(x, inverse(x)), e)) << g.name();
            EXPECT_TRUE(same(multiply(inverse(x), x), e)) << g.name();
        }
    }
}

TEST(GroupLaw, Associativity) {
    numerics::Rng rng(2);
    for (const auto& g : all_groups())
        for (int i = 0; i < 1000; ++i) {
            const auto a = random_element(rng, g, 6), b = random_element(rng, g, 6), c = random_element(rng, g, 6);
            ASSERT_TRUE(same(multiply(multiply(a, b), c), multiply(a, multiply(b, c)))) << g.name();
        }
}

TEST(GroupLaw, MismatchedInstancesThrow) {
    EXPECT_THROW(multiply(GroupElement(LampElement::t(2)), GroupElement(BSElement::t(2))), ParameterError);
    EXPECT_THROW(multiply(LampElement::t(2), LampElement::t(3)), ParameterError);
    EXPECT_THROW(multiply(BSElement::a(2), BSElement::a(3)), ParameterError);
}

TEST(Lamplighter, FlipSquaredIsIdentity) {
    const LampElement a = LampElement::a(2);
    EXPECT_TRUE(same(multiply(a, a), LampElement::identity(2)));
    const LampElement a3 = LampElement::a(3);
    EXPECT_FALSE(same(multiply(a3, a3), LampElement::identity(3)));
    EXPECT_TRUE(same(multiply(a3, multiply(a3, a3)), LampElement::identity(3)));
}

TEST(BaumslagSolitar, Relation) {
    const BSElement t = BSElement::t(2), a = BSElement::a(2);
    const BSElement lhs = multiply(multiply(t, a), inverse(t));
    EXPECT_TRUE(same(lhs, multiply(a, a)));
    for (double x : {-1.5, 0.0, 0.25, 3.0}) EXPECT_DOUBLE_EQ(lhs.apply(x), x + 2);
}

TEST(BaumslagSolitar, MultiplicationIsComposition) {
    numerics::Rng rng(3);
    const Group g = Group::baumslag_solitar(3);
    for (int i = 0; i < 300; ++i) {
        const auto x = std::get<BSElement>(random_element(rng, g, 6));
        const auto y = std::get<BSElement>(random_element(rng, g, 6));
        const BSElement xy = multiply(x, y);
        EXPECT_EQ(xy.b(), Rational::pow(Rational(3), static_cast<int>(x.k)) * y.b() + x.b());
        const double s = rng.uniform(-2, 2);
        EXPECT_NEAR(xy.apply(s), x.apply(y.apply(s)), 1e-9 * (1 + std::fabs(xy.apply(s))));
    }
}

TEST(Sol, Eigenvalues) {
    const SolGroup s;
    EXPECT_NEAR(s.lambda1, (3 + std::sqrt(5.0)) / 2, 1e-14);
    EXPECT_NEAR(s.lambda2, (3 - std::sqrt(5.0)) / 2, 1e-14);
    EXPECT_NEAR(s.lambda1 * s.lambda2, 1.0, 1e-15);
    EXPECT_THROW(SolGroup(IntMat::two_by_two(1, 1, 0, 1)), ParameterError);
    EXPECT_THROW(SolGroup(IntMat::two_by_two(3, 1, 1, 1)), ParameterError);
}

TEST(HeightChange, Examples) {
    for (const auto& g : all_groups()) {
        EXPECT_EQ(height_change(g.identity()), 0);
        EXPECT_EQ(height_change(g.generators().front().element), 1) << g.name();
        for (std::size_t i = 1; i < g.generators().size(); ++i) EXPECT_EQ(height_change(g.generators()[i].element), 0);
    }
}

TEST(HeightChange, Homomorphism) {
    numerics::Rng rng(4);
    for (const auto& g : all_groups())
        for (int i = 0; i < 1000; ++i) {
            const auto a = random_element(rng, g, 10), b = random_element(rng, g, 10);
            ASSERT_EQ(height_change(multiply(a, b)), height_change(a) + height_change(b));
        }
}

TEST(HeightChange, SurjectiveWithKernel) {
    for (const auto& g : all_groups()) {
        GroupElement p = g.identity();
        for (int k = 1; k <= 5; ++k) {
            p = multiply(p, g.generators().front().element);
            EXPECT_EQ(height_change(p), k);
            EXPECT_EQ(height_change(inverse(p)), -k);
        }
        // conjugates of the base generators stay in the kernel
        const auto t = g.generators().front().element;
        for (std::size_t i = 1; i < g.generators().size(); ++i)
            EXPECT_EQ(height_change(multiply(multiply(t, g.generators()[i].element), inverse(t))), 0);
    }
}

TEST(Action, IdentityTrivialAndHeightShift) {
    numerics::Rng rng(5);
    for (const auto& g : all_groups()) {
        const Model m = g.model();
        const HoroPoint o = g.origin();
        EXPECT_EQ(separation(m, g.act(g.identity(), o), o), 0.0) << g.name();
        for (int i = 0; i < 200; ++i) {
            const auto x = random_element(rng, g, 8);
            const HoroPoint p = g.act(random_element(rng, g, 6), o);
            const double dh = horo_height(m, g.act(x, p)) - horo_height(m, p);
            EXPECT_NEAR(dh, static_cast<double>(height_change(x)), 1e-9) << g.name();
        }
    }
}

TEST(Action, IsALeftAction) {
    numerics::Rng rng(6);
    for (const auto& g : all_groups()) {
        const Model m = g.model();
        for (int i = 0; i < 200; ++i) {
            const auto x = random_element(rng, g, 5), y = random_element(rng, g, 5);
            const HoroPoint p = g.act(random_element(rng, g, 5), g.origin());
            const HoroPoint lhs = g.act(x, g.act(y, p)), rhs = g.act(multiply(x, y), p);
            EXPECT_LT(separation(m, lhs, rhs), 1e-9) << g.name();
        }
    }
}

TEST(Action, LamplighterPreservesAdjacency) {
    numerics::Rng rng(7);
    const Group g = Group::lamplighter(2);
    const Model m = g.model();
    for (int i = 0; i < 1000; ++i) {
        const HoroPoint p = g.act(random_element(rng, g, 8), g.origin());
        const GroupElement s = g.generators()[static_cast<std::size_t>(rng.integer(0, 1))].element;
        // right multiplication by a generator gives a neighbour
        const HoroPoint q = lamp_to_dl(multiply(dl_to_lamp(m, p), std::get<LampElement>(s)));
        const auto x = random_element(rng, g, 8);
        ASSERT_EQ(dl_distance(m, g.act(x, p), g.act(x, q)), dl_distance(m, p, q));
        ASSERT_LE(dl_distance(m, p, q), 2);
    }
}

TEST(Action, LamplighterBijection) {
    numerics::Rng rng(8);
    const Model m = Model::diestel_leader(3, 3);
    for (int i = 0; i < 300; ++i) {
        const HoroPoint p = random_horo_point(rng, m, 3);
        ASSERT_EQ(lamp_to_dl(dl_to_lamp(m, p)), p);
    }
    EXPECT_THROW(act_lamplighter(LampElement::t(2), m, random_horo_point(rng, m, 1)), ParameterError);
}

TEST(Action, BSRaisesPlaneHeight) {
    const Group g = Group::baumslag_solitar(2);
    const HoroPoint p = g.act(BSElement::t(2), g.origin());
    EXPECT_NEAR(std::get<HPoint>(p.x).height(), 1.0, 1e-15);
    EXPECT_EQ(std::get<TreePoint>(p.y).height(), -1.0);
}

TEST(Britton, Examples) {
    const HnnBase bs2 = HnnBase::bs(2);
    EXPECT_EQ(britton_reduce("a", bs2), (BrittonForm{0, {1}, 0}));
    const BrittonForm f = britton_reduce("t^-1 a t", bs2);
    EXPECT_EQ(f, (BrittonForm{1, {1}, 1}));
    const BSElement e = to_bs(evaluate(f, bs2), 2);
    EXPECT_EQ(e.k, 0);
    EXPECT_EQ(e.b(), Rational(1, 2));
    EXPECT_DOUBLE_EQ(e.apply(0.25), 0.75);
    EXPECT_EQ(britton_reduce("t a T", bs2), (BrittonForm{0, {2}, 0}));
    EXPECT_EQ(britton_reduce("", bs2), (BrittonForm{0, {0}, 0}));
}

TEST(Britton, ParseErrors) {
    EXPECT_THROW(parse_word("t x", true), ParseError);
    EXPECT_THROW(parse_word("t^", true), ParseError);
    EXPECT_THROW(parse_word("b", false), ParseError);
    EXPECT_EQ(parse_word("t^-2 a^3 t", false).letters.size(), 3u);
}

TEST(Britton, RoundTrip) {
    numerics::Rng rng(9);
    const std::vector<std::pair<HnnBase, std::string>> cases{{HnnBase::bs(2), "tTaA"}, {HnnBase::z2(IntMat::two_by_two(3, 1, 1, 1)), "tTaAbB"}};
    for (const auto& [base, alphabet] : cases)
        for (int i = 0; i < 1000; ++i) {
            std::string w;
            const auto len = rng.integer(0, 12);
            for (std::int64_t j = 0; j < len; ++j) {
                w += alphabet[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
                if (rng.coin()) w += "^" + std::to_string(rng.integer(-3, 3));
                w += ' ';
            }
            const BrittonForm f = britton_reduce(w, base);
            ASSERT_GE(f.x, 0);
            ASSERT_GE(f.y, 0);
            ASSERT_EQ(evaluate(parse_word(w, base.dim() == 2), base), evaluate(f, base)) << w;
        }
}

TEST(Orbit, LamplighterGeneratorsMoveAtMostTwo) {
    const Group g = Group::lamplighter(2);
    const Model m = g.model();
    EXPECT_EQ(dl_distance(m, g.origin(), g.act(g.identity(), g.origin())), 0);
    for (const auto& s : g.generators()) EXPECT_LE(dl_distance(m, g.origin(), g.act(s.element, g.origin())), 2);
}

TEST(Orbit, FitConstants) {
    for (const auto& g : {Group::lamplighter(2), Group::baumslag_solitar(2)}) {
        const OrbitFit f = orbit_qi_constants(g, 3, AdmissibleNorm::l2norm());
        EXPECT_GE(f.L, 1.0);
        EXPECT_GE(f.C, 0.0);
        EXPECT_GT(f.ball_size, 1u);
        EXPECT_EQ(f.exact_distances, g.kind() == GroupKind::lamplighter);
    }
    EXPECT_THROW(cayley_ball(Group::lamplighter(2), 9), ResourceError);
}

TEST(Orbit, CayleyBallSizes) {
    // BS(1,2) sphere sizes 1, 4, 12 for {t, a}
    const auto ball = cayley_ball(Group::baumslag_solitar(2), 2);
    EXPECT_EQ(ball.size(), 17u);
}
