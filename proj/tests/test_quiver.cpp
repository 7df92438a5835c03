#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace kacdepth;

namespace {

Quiver loops(int g) { return Quiver(1, std::vector<Arrow>(static_cast<std::size_t>(g), Arrow{0, 0})); }
const Quiver kKronecker(2, {{0, 1}, {0, 1}});
const Quiver kA2(2, {{0, 1}});
const Quiver kTriangle(3, {{0, 1}, {1, 2}, {2, 0}});

} // namespace

TEST(Quiver, Validation)
{
    EXPECT_THROW(Quiver(2, {{0, 2}}), std::out_of_range);
    EXPECT_THROW(Quiver(-1, {}), std::invalid_argument);
    EXPECT_EQ(loops(3).nloops(), 3);
}

TEST(Betti, Examples)
{
    EXPECT_EQ(betti(loops(3)), 3);
    EXPECT_EQ(betti(kKronecker), 1);
    EXPECT_EQ(betti(kTriangle), 1);
}

TEST(Components, Examples)
{
    const auto two = components(Quiver(2, {}));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0], std::vector<int>{0});
    EXPECT_EQ(two[1], std::vector<int>{1});
    EXPECT_EQ(components(kTriangle).size(), 1u);
    EXPECT_EQ(components(Quiver(4, {{0, 1}, {1, 2}, {2, 0}})).size(), 2u);
}

TEST(TwoConnected, Examples)
{
    EXPECT_FALSE(is_two_connected(kA2));
    EXPECT_TRUE(is_two_connected(kKronecker));
    EXPECT_TRUE(is_two_connected(kTriangle));
    EXPECT_TRUE(is_two_connected(loops(1)));
    EXPECT_FALSE(is_two_connected(Quiver(1, {})));
}

TEST(EulerForm, Examples)
{
    for (int g = 0; g <= 4; ++g)
        EXPECT_EQ(euler_form(loops(g), {1}, {1}), 1 - g);
    EXPECT_EQ(euler_form(kA2, {1, 1}, {1, 1}), 1);
    EXPECT_EQ(euler_form(kTriangle, {0, 0, 0}, {3, 1, 2}), 0);
    EXPECT_EQ(euler_form(kA2, {2, 3}, {1, 1}), 2 + 3 - 2);
}

TEST(Contraction, Examples)
{
    const auto c = contract_arrow(kTriangle, 0);
    EXPECT_EQ(c.quiver.nvertices(), 2);
    EXPECT_EQ(c.quiver.narrows(), 2);
    EXPECT_EQ(betti(c.quiver), 1);
    EXPECT_TRUE(is_two_connected(c.quiver));

    const auto d = contract_arrow(kA2, 0);
    EXPECT_EQ(d.quiver.nvertices(), 1);
    EXPECT_EQ(d.quiver.narrows(), 0);
    EXPECT_EQ(d.push_forward(std::vector<long>{1, -1}), std::vector<long>{0});
    EXPECT_THROW(contract_arrow(loops(1), 0), std::invalid_argument);
}

TEST(Restriction, Examples)
{
    const auto r = restrict_vertices(kTriangle, {0, 1});
    EXPECT_EQ(r.quiver.nvertices(), 2);
    EXPECT_EQ(r.quiver.narrows(), 1);

    const Quiver bridge = delete_arrow(kKronecker, 1);
    EXPECT_EQ(bridge.narrows(), 1);
    EXPECT_FALSE(is_two_connected(bridge));

    const Quiver empty = restrict_arrows(kTriangle, {});
    EXPECT_EQ(empty.nvertices(), 3);
    EXPECT_EQ(empty.narrows(), 0);
    EXPECT_EQ(betti(empty), 0);
}

TEST(SpanningTrees, Examples)
{
    EXPECT_EQ(spanning_trees(kKronecker), (std::vector<std::vector<int>>{{0}, {1}}));
    EXPECT_EQ(spanning_trees(kTriangle).size(), 3u);
    EXPECT_EQ(spanning_trees(loops(2)), (std::vector<std::vector<int>>{{}}));
}

TEST(TreePathData, Examples)
{
    ValuedTree t{{0}, {0}};
    auto d = tree_path_data(kKronecker, t, 1);
    EXPECT_EQ(d.path, std::vector<int>{0});
    EXPECT_EQ(d.max_valuation, 0);
    EXPECT_EQ(d.critical_arrow, 0);

    const Quiver tri(3, {{0, 1}, {1, 2}, {0, 2}});
    d = tree_path_data(tri, ValuedTree{{0, 1}, {1, 0}}, 2);
    EXPECT_EQ(d.max_valuation, 1);
    EXPECT_EQ(d.critical_arrow, 0);
    d = tree_path_data(tri, ValuedTree{{0, 1}, {1, 1}}, 2);
    EXPECT_EQ(d.critical_arrow, 0);
    d = tree_path_data(tri, ValuedTree{{0, 1}, {0, 2}}, 2);
    EXPECT_EQ(d.critical_arrow, 1);
}

TEST(Properties, SpanningTreeCountMatchesMatrixTree)
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const Quiver q = oracle::random_quiver(rng, 5, 7, true);
        ASSERT_EQ(Integer(static_cast<unsigned long>(spanning_trees(q).size())), oracle::matrix_tree_count(q));
        for (const auto& t : spanning_trees(q)) {
            ASSERT_EQ(static_cast<int>(t.size()), q.nvertices() - 1);
            std::vector<bool> use(static_cast<std::size_t>(q.narrows()), false);
            for (int a : t) {
                ASSERT_FALSE(q.arrow(a).is_loop());
                use[static_cast<std::size_t>(a)] = true;
            }
            ASSERT_EQ(oracle::components(q, use), 1);
        }
    }
}

TEST(Properties, BettiAgainstUnionFind)
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 1000; ++i) {
        const Quiver q = oracle::random_quiver(rng, 5, 8, false);
        const std::uint64_t mask = rng() & ((std::uint64_t{1} << q.narrows()) - 1);
        ASSERT_EQ(betti(q, mask), oracle::betti(q, oracle::mask_to_flags(q.narrows(), mask)));
        ASSERT_EQ(is_two_connected(q), oracle::two_connected(q));
        ASSERT_EQ(is_connected(q), oracle::connected(q));
    }
}

TEST(Properties, BettiUnderContractionAndDeletion)
{
    std::mt19937_64 rng(33);
    for (int i = 0; i < 1000; ++i) {
        const Quiver q = oracle::random_quiver(rng, 5, 8, false);
        if (q.narrows() == 0)
            continue;
        const int a = static_cast<int>(rng() % static_cast<unsigned>(q.narrows()));
        if (!q.arrow(a).is_loop())
            ASSERT_EQ(betti(contract_arrow(q, a).quiver), betti(q));
        const Quiver d = delete_arrow(q, a);
        const bool on_cycle = component_count(d) == component_count(q);
        if (on_cycle)
            ASSERT_EQ(betti(d), betti(q) - 1);
    }
}

TEST(Properties, BettiAdditiveOverPartitions)
{
    std::mt19937_64 rng(34);
    for (int i = 0; i < 1000; ++i) {
        const Quiver q = oracle::random_quiver(rng, 5, 8, false);
        std::vector<std::vector<int>> blocks;
        std::vector<int> tag(static_cast<std::size_t>(q.nvertices()));
        for (auto& t : tag)
            t = static_cast<int>(rng() % 3);
        for (int b = 0; b < 3; ++b) {
            std::vector<int> blk;
            for (int v = 0; v < q.nvertices(); ++v)
                if (tag[static_cast<std::size_t>(v)] == b)
                    blk.push_back(v);
            if (!blk.empty())
                blocks.push_back(blk);
        }
        int s = 0;
        for (const auto& blk : blocks)
            s += betti(restrict_vertices(q, blk).quiver);
        ASSERT_EQ(betti(q), betti(contract_blocks(q, blocks)) + s);
    }
}

// 2-connected iff b(Q) exceeds the sum over every nontrivial vertex partition.
TEST(Exhaustive, TwoConnectedPartitionCriterion)
{
    const auto catalog = oracle::quiver_catalog(5, 6, false, 0, true);
    ASSERT_GT(catalog.size(), 1000u);
    for (const auto& q : catalog)
        ASSERT_EQ(betti_partition_criterion(q), oracle::two_connected(q)) << oracle::describe(q);
}
