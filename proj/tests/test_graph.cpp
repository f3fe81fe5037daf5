#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dqlab/graph.hpp"
#include "test_support.hpp"

namespace dqlab {
namespace {

TEST(MatchingSize, CountsPairs) {
  EXPECT_EQ(matching_size(Matching{}), 0U);
  EXPECT_EQ(matching_size(Matching{{{0, 0}, {1, 1}}}), 2U);
  Matching identity;
  for (Vertex i = 0; i < 5; ++i) identity.pairs.push_back({i, i});
  EXPECT_EQ(matching_size(identity), 5U);
  EXPECT_TRUE(validate_matching(BipartiteGraph::complete(5, 5), identity));
}

TEST(ValidateMatching, DefinitionCases) {
  Matching identity{{{0, 0}, {1, 1}, {2, 2}}};
  EXPECT_TRUE(validate_matching(BipartiteGraph::complete(3, 3), identity));

  EXPECT_FALSE(validate_matching(BipartiteGraph(3, 3), Matching{{{0, 0}}}));

  BipartiteGraph g(2, 2);
  g.add_edge(0, 1);
  EXPECT_FALSE(validate_matching(g, Matching{{{0, 1}, {1, 1}}}));
}

TEST(ValidateMatching, RejectsOutOfRangeIds) {
  BipartiteGraph g(2, 2);
  EXPECT_THROW(validate_matching(g, Matching{{{2, 0}}}), InputError);
  EXPECT_THROW(validate_matching(g, Matching{{{0, 5}}}), InputError);
}

TEST(ValidateMatching, RejectsReusedLeftVertex) {
  auto g = BipartiteGraph::complete(2, 2);
  EXPECT_FALSE(validate_matching(g, Matching{{{0, 0}, {0, 1}}}));
}

// Valid matchings are bounded by the smaller side and stay valid when edges
// are added.
TEST(ValidateMatching, BoundedAndMonotoneUnderEdgeAddition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto nl = 1 + rng() % 9;
    const auto nr = 1 + rng() % 9;
    auto g = testing::random_graph(nl, nr, 0.4, rng);
    Matching m;
    auto perm = testing::random_permutation(nr, rng);
    for (Vertex v = 0; v < nl && v < nr; ++v) {
      if (rng() % 2) m.pairs.push_back({v, perm[v]});
    }
    if (!validate_matching(g, m)) continue;
    EXPECT_LE(matching_size(m), std::min(nl, nr));
    auto super = g;
    super.add_edge(static_cast<Vertex>(rng() % nl), static_cast<Vertex>(rng() % nr));
    EXPECT_TRUE(validate_matching(super, m));
  }
}

TEST(BipartiteGraph, RectangularRowsAndDegrees) {
  BipartiteGraph g(3, 70);
  g.add_edge(0, 69);
  g.add_edge(0, 3);
  g.add_edge(2, 64);
  EXPECT_EQ(g.words_per_row(), 2U);
  EXPECT_EQ(g.degree(0), 2U);
  EXPECT_EQ(g.neighbors(0), (std::vector<Vertex>{3, 69}));
  EXPECT_EQ(g.edge_count(), 3U);
  g.remove_edge(0, 3);
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_THROW(g.add_edge(3, 0), InputError);
  EXPECT_EQ(BipartiteGraph::complete(3, 70).edge_count(), 210U);
}

TEST(RightOrder, MustBeAPermutation) {
  EXPECT_NO_THROW(RightOrder({2, 0, 1}));
  EXPECT_THROW(RightOrder({0, 0, 1}), InputError);
  EXPECT_THROW(RightOrder({0, 3, 1}), InputError);
  EXPECT_EQ(RightOrder::identity(4)[3], 3U);
}

TEST(GraphFile, ParsesCommentsAndBlankLines) {
  std::istringstream in("# a small graph\n3 2\n\n0 1  # edge\n2 0\n");
  const auto g = read_graph(in);
  EXPECT_EQ(g.n_left(), 3U);
  EXPECT_EQ(g.n_right(), 2U);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_EQ(g.edge_count(), 2U);
}

TEST(GraphFile, RejectsMalformedInput) {
  std::istringstream missing("");
  EXPECT_THROW(read_graph(missing), InputError);
  std::istringstream range("2 2\n0 2\n");
  EXPECT_THROW(read_graph(range), InputError);
  std::istringstream junk("2 2\n0 x\n");
  EXPECT_THROW(read_graph(junk), InputError);
  std::istringstream extra("2 2\n0 1 1\n");
  EXPECT_THROW(read_graph(extra), InputError);
}

TEST(GraphFile, WriteThenReadIsIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(1 + rng() % 20, 1 + rng() % 80, 0.3, rng);
    std::stringstream buf;
    write_graph(buf, g);
    EXPECT_EQ(read_graph(buf), g);
  }
}

TEST(MatchingFile, RoundTrip) {
  Matching m{{{0, 3}, {2, 1}}};
  std::stringstream buf;
  write_matching(buf, m);
  EXPECT_EQ(read_matching(buf), m);
  std::istringstream bad("0\n");
  EXPECT_THROW(read_matching(bad), InputError);
}

}  // namespace
}  // namespace dqlab
