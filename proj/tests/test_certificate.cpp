#include <random>

#include <gtest/gtest.h>

#include "dqlab/algorithms/certificate.hpp"
#include "dqlab/reference.hpp"
#include "test_support.hpp"

namespace dqlab {
namespace {

std::vector<Vertex> all(std::size_t n) {
  std::vector<Vertex> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<Vertex>(i);
  return ids;
}

TEST(VerifyCertificate, EmptyGraph) {
  BipartiteGraph g(5, 5);
  Oracle o(g);
  EXPECT_TRUE(verify_maximality_certificate(o, Matching{}, all(5), all(5)));
  EXPECT_EQ(o.transcript().demand_count, 0U);
  EXPECT_EQ(o.transcript().or_count, 5U);
}

TEST(VerifyCertificate, CompleteGraphPerfectMatching) {
  const auto g = BipartiteGraph::complete(4, 4);
  Oracle o(g);
  const Matching perfect{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
  EXPECT_TRUE(verify_maximality_certificate(o, perfect, {}, all(4)));
  EXPECT_EQ(o.transcript().demand_count, 4U);
  EXPECT_EQ(o.transcript().or_count, 0U);
}

TEST(VerifyCertificate, WrongShapeIsAnErrorNotAVerdict) {
  BipartiteGraph g(3, 3);
  Oracle o(g);
  EXPECT_THROW(verify_maximality_certificate(o, Matching{}, all(3), std::vector<Vertex>{0, 1}), CertificateShapeError);
  const std::vector<Vertex> repeated{0, 0, 1};
  EXPECT_THROW(verify_maximality_certificate(o, Matching{}, repeated, all(3)), CertificateShapeError);
  EXPECT_EQ(o.transcript().entries.size(), 0U);
}

TEST(VerifyCertificate, NonEdgeInMatchingFails) {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 1);
  Oracle o(g);
  // Claims (0,0), which is not an edge.
  EXPECT_FALSE(verify_maximality_certificate(o, Matching{{{0, 0}}}, std::vector<Vertex>{1}, std::vector<Vertex>{0, 1}));
}

// Reference certificates verify; moving any single vertex breaks them.
TEST(VerifyCertificate, KonigRoundTripAndMutations) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng() % 28;
    const auto g = testing::random_graph(n, n, 0.1, rng);
    const auto m = max_matching_reference(g);
    const auto cert = konig_certificate(g, m);
    {
      Oracle o(g);
      ASSERT_TRUE(verify_maximality_certificate(o, m, cert.block_left, cert.block_right));
      EXPECT_LE(o.transcript().demand_count + o.transcript().or_count, n + cert.block_left.size());
    }
    // Swap one block_right vertex for a right vertex adjacent to block_left.
    std::vector<Vertex> outside;
    for (Vertex u = 0; u < n; ++u) {
      if (std::find(cert.block_right.begin(), cert.block_right.end(), u) != cert.block_right.end()) continue;
      for (auto v : cert.block_left) {
        if (g.has_edge(v, u)) {
          outside.push_back(u);
          break;
        }
      }
    }
    if (!outside.empty() && !cert.block_right.empty()) {
      auto right = cert.block_right;
      right[rng() % right.size()] = outside[rng() % outside.size()];
      Oracle o(g);
      EXPECT_FALSE(verify_maximality_certificate(o, m, cert.block_left, right));
    }
    // Dropping a pair keeps the shape only if a vertex is added, which the
    // unchanged blocks do not do.
    if (!m.empty()) {
      auto smaller = m;
      smaller.pairs.pop_back();
      Oracle o(g);
      EXPECT_THROW(verify_maximality_certificate(o, smaller, cert.block_left, cert.block_right),
                   CertificateShapeError);
    }
  }
}

// Soundness: an accepted certificate always comes with an optimal matching.
TEST(VerifyCertificate, AcceptedImpliesOptimal) {
  std::mt19937_64 rng(67);
  int accepted = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto g = testing::random_graph(n, n, 0.4, rng);
    Matching m;
    const auto perm = testing::random_permutation(n, rng);
    for (Vertex v = 0; v < n; ++v) {
      if (g.has_edge(v, perm[v]) && rng() % 3 != 0) m.pairs.push_back({v, perm[v]});
    }
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    for (Vertex w = 0; w < n; ++w) {
      if (rng() % 2) left.push_back(w);
      if (rng() % 2) right.push_back(w);
    }
    if (left.size() + right.size() != 2 * n - m.size()) continue;
    Oracle o(g);
    if (verify_maximality_certificate(o, m, left, right)) {
      ++accepted;
      ASSERT_EQ(m.size(), testing::brute_force_max_matching(g));
    }
  }
  EXPECT_GT(accepted, 20);
}

}  // namespace
}  // namespace dqlab
