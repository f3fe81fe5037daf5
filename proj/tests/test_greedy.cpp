#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dqlab/algorithms/greedy.hpp"
#include "dqlab/harness/generators.hpp"
#include "dqlab/reference.hpp"
#include "test_support.hpp"

namespace dqlab {
namespace {

bool is_maximal(const BipartiteGraph& g, const Matching& m) {
  std::vector<bool> left(g.n_left(), false);
  std::vector<bool> right(g.n_right(), false);
  for (const auto& [v, u] : m.pairs) left[v] = right[u] = true;
  for (const auto& e : g.edges()) {
    if (!left[e.left] && !right[e.right]) return false;
  }
  return true;
}

TEST(GreedyOnline, CompleteGraphIsPerfect) {
  const auto g = BipartiteGraph::complete(4, 4);
  Oracle o(g);
  EXPECT_EQ(greedy_online(o).size(), 4U);
  EXPECT_EQ(o.transcript().demand_count, 4U);
}

TEST(GreedyOnline, TightHalfGadget) {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  ASSERT_EQ(testing::brute_force_max_matching(g), 2U);
  Oracle o(g);
  const std::vector<Vertex> arrival{0, 1};
  const auto m = greedy_online(o, arrival);
  EXPECT_EQ(m.size(), 1U);
  EXPECT_EQ(m.pairs.front(), (Edge{0, 0}));
}

TEST(GreedyOnline, EmptyGraphStillQueriesEveryVertex) {
  BipartiteGraph g(5, 5);
  Oracle o(g);
  EXPECT_EQ(greedy_online(o).size(), 0U);
  EXPECT_EQ(o.transcript().demand_count, 5U);
}

TEST(GreedyOnline, RejectsNonPermutationArrival) {
  BipartiteGraph g(3, 3);
  Oracle o(g);
  const std::vector<Vertex> bad{0, 0, 1};
  EXPECT_THROW(greedy_online(o, bad), InputError);
}

TEST(GreedyOnline, MaximalAndAtLeastHalfOnRandomGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto g = testing::random_graph(n, n, 0.02 + 0.3 * (rng() % 10) / 10.0, rng);
    const auto arrival = testing::random_permutation(n, rng);
    Oracle o(g);
    const auto m = greedy_online(o, arrival);
    const auto opt = max_matching_reference(g).size();
    ASSERT_TRUE(validate_matching(g, m));
    ASSERT_TRUE(is_maximal(g, m));
    ASSERT_GE(2 * m.size(), opt);
    ASSERT_EQ(o.transcript().demand_count, n);
  }
}

TEST(RankingGreedy, CompleteAndEmpty) {
  const auto k3 = BipartiteGraph::complete(3, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Oracle o(k3);
    EXPECT_EQ(ranking_greedy(o, seed).size(), 3U);
    EXPECT_EQ(o.transcript().demand_count, 3U);
  }
  BipartiteGraph empty(4, 4);
  Oracle o(empty);
  EXPECT_EQ(ranking_greedy(o, 7).size(), 0U);
}

TEST(RankingGreedy, SameSeedSameMatching) {
  const auto g = generate({GraphKind::erdos_renyi, 30, 0.1, 0, 5});
  Oracle a(g);
  Oracle b(g);
  EXPECT_EQ(ranking_greedy(a, 42), ranking_greedy(b, 42));
}

// Monte-Carlo against the brute-force optimum (8) on the upper-triangular
// graph.
TEST(RankingGreedy, UpperTriangularMeanRatio) {
  const auto g = generate({GraphKind::upper_triangular, 8, 0, 0, 0});
  const auto opt = testing::brute_force_max_matching(g);
  ASSERT_EQ(opt, 8U);
  double total = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Oracle o(g);
    const auto m = ranking_greedy(o, seed);
    ASSERT_TRUE(validate_matching(g, m));
    total += static_cast<double>(m.size()) / static_cast<double>(opt);
  }
  const double mean = total / 2000;
  EXPECT_GE(mean, 1.0 - 1.0 / std::exp(1.0) - 0.05);
  EXPECT_LE(mean, 1.0);
}

}  // namespace
}  // namespace dqlab
