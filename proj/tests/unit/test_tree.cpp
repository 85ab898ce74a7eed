#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>

#include <horoprod/errors.hpp>
#include <horoprod/numerics.hpp>
#include <horoprod/sampling.hpp>
#include <horoprod/tree.hpp>

using namespace horoprod;

namespace {

// Oracle: vertices as (height, integer label) in the subtree below a fixed
// high ancestor. A vertex at height h below the top at height H is the label
// sum of digits m^{i}; its parent drops the last digit. Distances come from
// plain BFS over this adjacency, with no digit maps involved.
struct LabelTree {
    int m;
    int top;  // height of the common ancestor
    // label at height h: number in [0, m^{top-h})
    std::map<std::pair<int, long>, std::vector<std::pair<int, long>>> adj;

    LabelTree(int branching, int top_height, int bottom) : m(branching), top(top_height) {
        for (int h = top; h > bottom; --h) {
            long count = 1;
            for (int i = 0; i < top - h; ++i) count *= m;
            for (long l = 0; l < count; ++l)
                for (int d = 0; d < m; ++d) {
                    adj[{h, l}].push_back({h - 1, l * m + d});
                    adj[{h - 1, l * m + d}].push_back({h, l});
                }
        }
    }

    int dist(std::pair<int, long> a, std::pair<int, long> b) const {
        std::map<std::pair<int, long>, int> seen{{a, 0}};
        std::deque<std::pair<int, long>> q{a};
        while (!q.empty()) {
            auto v = q.front();
            q.pop_front();
            if (v == b) return seen[v];
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (auto w : it->second)
                if (seen.emplace(w, seen[v] + 1).second) q.push_back(w);
        }
        return -1;
    }

    // digit of the label at level l (levels below -top)
    TreeVertex to_vertex(std::pair<int, long> v) const {
        std::map<std::int64_t, int> digits;
        long label = v.second;
        for (int h = v.first; h < top; ++h) {
            const int d = static_cast<int>(label % m);
            label /= m;
            if (d) digits[-(h + 1)] = d;
        }
        // the digit added when descending from height h+1 to h sits at level -(h+1)
        return TreeVertex(m, v.first, digits);
    }
};

}  // namespace

TEST(TreeVertex, CanonicalForm) {
    EXPECT_THROW(TreeVertex(2, 0, {{-1, 0}}), StructureError);
    EXPECT_THROW(TreeVertex(2, 0, {{0, 1}}), StructureError);
    EXPECT_THROW(TreeVertex(2, 0, {{-1, 2}}), StructureError);
    EXPECT_THROW(TreeVertex(1, 0), ParameterError);
    EXPECT_NO_THROW(TreeVertex(3, 0, {{-1, 2}, {-5, 1}}));
}

TEST(TreeVertex, ParentDropsTopDigit) {
    const TreeVertex v(2, 2, {{-3, 1}, {-4, 1}, {-6, 1}});
    const TreeVertex p = tree_parent(v);
    EXPECT_EQ(p.h, 3);
    EXPECT_EQ(p.digits, (std::map<std::int64_t, int>{{-4, 1}, {-6, 1}}));
    for (int c = 0; c < 3; ++c) EXPECT_EQ(tree_parent(tree_child(TreeVertex::root(3), c)), TreeVertex::root(3));
}

TEST(TreeMeet, Examples) {
    const TreeVertex r = TreeVertex::root(2);
    const TreeVertex c0 = tree_child(r, 0), c1 = tree_child(r, 1);
    EXPECT_EQ(tree_meet(c0, c0), c0);
    EXPECT_EQ(tree_meet(r, c1), r);
    EXPECT_EQ(tree_meet(c0, c1), r);
    EXPECT_THROW(tree_meet(r, TreeVertex::root(3)), ParameterError);
}

TEST(TreeDistance, Examples) {
    const TreeVertex r = TreeVertex::root(2);
    const TreeVertex u = tree_child(r, 1);
    EXPECT_EQ(tree_distance(u, u), 0);
    EXPECT_EQ(tree_distance(u, tree_parent(u)), 1);
    EXPECT_EQ(tree_distance(tree_child(tree_child(r, 0), 1), tree_child(tree_child(r, 1), 1)), 4);
    EXPECT_THROW(tree_distance(r, TreeVertex::root(3)), ParameterError);
}

TEST(TreeDistance, MatchesLabelOracle) {
    for (int m : {2, 3}) {
        const LabelTree oracle(m, 3, m == 2 ? -4 : -2);
        std::vector<std::pair<int, long>> vs;
        for (const auto& [v, _] : oracle.adj) vs.push_back(v);
        for (std::size_t i = 0; i < vs.size(); i += 3)
            for (std::size_t j = 0; j < vs.size(); j += 5)
                ASSERT_EQ(tree_distance(oracle.to_vertex(vs[i]), oracle.to_vertex(vs[j])), oracle.dist(vs[i], vs[j]));
    }
}

TEST(TreeBfsBall, Examples) {
    const TreeVertex r = TreeVertex::root(2);
    EXPECT_EQ(tree_bfs_ball(r, 0), (std::map<TreeVertex, int>{{r, 0}}));
    const auto b1 = tree_bfs_ball(r, 1);
    EXPECT_EQ(b1.size(), 4u);
    EXPECT_THROW(tree_bfs_ball(r, 15), ResourceError);
    EXPECT_THROW(tree_bfs_ball(r, -1), ParameterError);
}

TEST(TreeBfsBall, AllPairsInSmallBalls) {
    for (auto [m, radius] : {std::pair{2, 5}, {3, 4}}) {
        const auto ball = tree_bfs_ball(TreeVertex::root(m), radius);
        std::vector<TreeVertex> vs;
        for (const auto& [v, d] : ball) {
            ASSERT_EQ(tree_distance(v, TreeVertex::root(m)), d);
            vs.push_back(v);
        }
        // every pair: BFS from each vertex in a stride, compared on the whole ball
        for (std::size_t i = 0; i < vs.size(); i += 3) {
            const auto from = tree_bfs_ball(vs[i], 2 * radius);
            for (const auto& w : vs) ASSERT_EQ(tree_distance(vs[i], w), from.at(w));
        }
    }
}

TEST(TreeDistance, MetricAndLipschitz) {
    numerics::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const TreeVertex u = random_tree_vertex(rng, 3, rng.integer(-4, 4), 6);
        const TreeVertex v = random_tree_vertex(rng, 3, rng.integer(-4, 4), 6);
        const TreeVertex w = random_tree_vertex(rng, 3, rng.integer(-4, 4), 6);
        EXPECT_EQ(tree_distance(u, v), tree_distance(v, u));
        EXPECT_LE(tree_distance(u, w), tree_distance(u, v) + tree_distance(v, w));
        EXPECT_LE(std::llabs(u.h - v.h), tree_distance(u, v));
        EXPECT_EQ(tree_distance(u, v) == 0, u == v);
    }
}

TEST(TreeVerticalRay, Examples) {
    const TreeVertex v(2, -2, {{-1, 1}, {-3, 1}});
    EXPECT_EQ(tree_vertical_ray(v, 0), v);
    EXPECT_EQ(tree_vertical_ray(v, 2), tree_parent(tree_parent(v)));
    EXPECT_EQ(tree_vertical_ray(v, 5).h - v.h, 5);
    EXPECT_THROW(tree_vertical_ray(v, -1), ParameterError);
    EXPECT_EQ(tree_vertical_ray(v, -3, DownSeed{7}).h, v.h - 3);
}

TEST(TreeVerticalRay, UpRaysCoincideAboveMeet) {
    numerics::Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const TreeVertex u = random_tree_vertex(rng, 2, 0, 6);
        const TreeVertex v = random_tree_vertex(rng, 2, 0, 6);
        const auto meet = tree_meet_height(u, v);
        for (std::int64_t t = 0; t <= 8; ++t) {
            const auto d = tree_distance(tree_vertical_ray(u, t), tree_vertical_ray(v, t));
            EXPECT_EQ(d, std::max<std::int64_t>(0, 2 * (meet - t)));
        }
    }
}

TEST(TreeVerticalRay, DownSeedsDetermineOneLine) {
    const TreeVertex v = TreeVertex::root(3);
    // same seed, same line
    EXPECT_EQ(tree_vertical_ray(v, -10, DownSeed{42}), tree_vertical_ray(v, -10, DownSeed{42}));
    // the line is consistent: deeper points descend from shallower ones
    EXPECT_EQ(tree_ancestor(tree_vertical_ray(v, -10, DownSeed{42}), -4), tree_vertical_ray(v, -4, DownSeed{42}));
    // distinct seeds diverge below their meet and never rejoin
    const TreeVertex a = tree_vertical_ray(v, -12, DownSeed{1});
    const TreeVertex b = tree_vertical_ray(v, -12, DownSeed{2});
    ASSERT_NE(a, b);
    const auto meet = tree_meet_height(a, b);
    for (std::int64_t h = -12; h < meet; ++h) EXPECT_NE(tree_ancestor(a, h), tree_ancestor(b, h));
}

TEST(TreePoint, DistancesOnEdges) {
    const TreeVertex r = TreeVertex::root(2);
    const TreePoint a(tree_child(r, 0), 0.25), b(tree_child(r, 1), 0.5);
    EXPECT_DOUBLE_EQ(tree_point_distance(a, b), 0.75 + 0.5);
    EXPECT_DOUBLE_EQ(tree_point_distance(a, TreePoint(r)), 0.75);
    EXPECT_THROW(TreePoint(r, 1.0), ParameterError);
    const TreeGeodesic g(a, b);
    EXPECT_DOUBLE_EQ(g.length(), 1.25);
    EXPECT_EQ(g.at(0.75), TreePoint(r));
    EXPECT_DOUBLE_EQ(tree_point_distance(a, g.at(0.5)), 0.5);
}
