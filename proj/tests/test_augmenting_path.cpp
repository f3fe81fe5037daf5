#include <random>

#include <gtest/gtest.h>

#include "dqlab/algorithms/augmenting_path.hpp"
#include "dqlab/reference.hpp"
#include "test_support.hpp"

namespace dqlab {
namespace {

// Path invariants checked against the explicit graph.
void expect_valid_path(const BipartiteGraph& g, const PartialAssignment& pa, const AugmentingPath& path) {
  ASSERT_GE(path.length(), 1U);
  ASSERT_EQ(path.left.size(), path.right.size());
  EXPECT_NE(std::find(pa.unmatched.begin(), pa.unmatched.end(), path.left.front()), pa.unmatched.end());
  EXPECT_FALSE(pa.pi[path.right.back()]);
  for (std::size_t i = 0; i < path.length(); ++i) {
    EXPECT_TRUE(g.has_edge(path.left[i], path.right[i]));
    if (i + 1 < path.length()) {
      ASSERT_TRUE(pa.pi[path.right[i]]);
      EXPECT_EQ(*pa.pi[path.right[i]], path.left[i + 1]);
    }
  }
}

TEST(FindAugmentingPath, SingleEdgeFromEmptyMatching) {
  BipartiteGraph g(1, 1);
  g.add_edge(0, 0);
  Oracle o(g);
  const auto pa = PartialAssignment::from_matching(1, 1, Matching{});
  const auto path = find_augmenting_path(o, pa);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->left, (std::vector<Vertex>{0}));
  EXPECT_EQ(path->right, (std::vector<Vertex>{0}));
}

TEST(FindAugmentingPath, PerfectMatchingNeedsNoQuery) {
  const auto g = BipartiteGraph::complete(3, 3);
  Oracle o(g);
  const auto pa = PartialAssignment::from_matching(3, 3, Matching{{{0, 0}, {1, 1}, {2, 2}}});
  EXPECT_FALSE(find_augmenting_path(o, pa));
  EXPECT_EQ(o.transcript().demand_count, 0U);
}

BipartiteGraph path_graph() {
  BipartiteGraph g(3, 3);
  for (auto [v, u] : std::vector<Edge>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}) g.add_edge(v, u);
  return g;
}

TEST(FindAugmentingPath, PathGraphFreeNeighbour) {
  const auto g = path_graph();
  Oracle o(g);
  const auto pa = PartialAssignment::from_matching(3, 3, Matching{{{0, 0}, {1, 1}}});
  const auto path = find_augmenting_path(o, pa);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->left, (std::vector<Vertex>{2}));
  EXPECT_EQ(path->right, (std::vector<Vertex>{2}));
  EXPECT_EQ(o.transcript().demand_count, 1U);
}

// Hand trace with matching {(1,0)} and start set {0,2}: vertex 0 reaches
// right 0 and enqueues 1, is then exhausted; vertex 2 hits free right 1.
TEST(FindAugmentingPath, PathGraphBreadthFirstTrace) {
  const auto g = path_graph();
  Oracle o(g);
  const auto pa = PartialAssignment::from_matching(3, 3, Matching{{{1, 0}}});
  ASSERT_EQ(pa.unmatched, (std::vector<Vertex>{0, 2}));
  const auto path = find_augmenting_path(o, pa);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->left, (std::vector<Vertex>{2}));
  EXPECT_EQ(path->right, (std::vector<Vertex>{1}));
  EXPECT_EQ(o.transcript().demand_count, 3U);
  expect_valid_path(g, pa, *path);
}

TEST(FindAugmentingPath, LongAlternatingPath) {
  // Chain 0-0, 1-0, 1-1, 2-1, 2-2 with matching {(1,0),(2,1)} and start {0}:
  // the only augmenting path is 0 0 1 1 2 2.
  const auto g = path_graph();
  Oracle o(g);
  const auto pa = PartialAssignment::from_matching(3, 3, Matching{{{1, 0}, {2, 1}}});
  const auto path = find_augmenting_path(o, pa);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->left, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(path->right, (std::vector<Vertex>{0, 1, 2}));
  expect_valid_path(g, pa, *path);
}

TEST(FindAugmentingPath, RejectsBrokenAssignment) {
  const auto g = BipartiteGraph::complete(2, 2);
  Oracle o(g);
  PartialAssignment pa;
  pa.pi = {0, 0};
  EXPECT_THROW(find_augmenting_path(o, pa), PreconditionError);
  pa.pi = {0, std::nullopt};
  pa.unmatched = {0};
  EXPECT_THROW(find_augmenting_path(o, pa), PreconditionError);
}

// Existence agrees with a BFS over the explicit residual graph, found paths
// are valid, and the search stays within 2n queries.
TEST(FindAugmentingPath, AgreesWithResidualBfs) {
  std::mt19937_64 rng(41);
  int found = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    const auto g = testing::random_graph(n, n, 0.02 + 0.04 * (trial % 6), rng);
    // A random sub-matching of a maximum matching, then some start subset.
    auto m = max_matching_reference(g);
    std::erase_if(m.pairs, [&](const Edge&) { return rng() % 3 == 0; });
    auto pa = PartialAssignment::from_matching(n, n, m);
    std::erase_if(pa.unmatched, [&](Vertex) { return rng() % 4 == 0; });

    Oracle o(g);
    const auto path = find_augmenting_path(o, pa);
    ASSERT_EQ(path.has_value(), testing::residual_path_exists(g, pa.pi, pa.unmatched));
    ASSERT_LE(o.transcript().demand_count, 2 * n);
    if (path) {
      ++found;
      expect_valid_path(g, pa, *path);
      std::vector<std::optional<Vertex>> mate(n);
      for (const auto& [v, u] : m.pairs) mate[v] = u;
      augment(mate, *path);
      const auto grown = Matching::from_mates(mate);
      EXPECT_EQ(grown.size(), m.size() + 1);
      EXPECT_TRUE(validate_matching(g, grown));
    }
  }
  EXPECT_GT(found, 100);
}

}  // namespace
}  // namespace dqlab
