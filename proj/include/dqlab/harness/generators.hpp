#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"

namespace dqlab {

enum class GraphKind { empty, complete, erdos_renyi, planted_perfect, upper_triangular, d_regular };

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::empty: return "empty";
    case GraphKind::complete: return "complete";
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::planted_perfect: return "planted_perfect";
    case GraphKind::upper_triangular: return "upper_triangular";
    case GraphKind::d_regular: return "d_regular";
  }
  return "?";
}

inline GraphKind parse_graph_kind(const std::string& s) {
  for (auto k : {GraphKind::empty, GraphKind::complete, GraphKind::erdos_renyi, GraphKind::planted_perfect,
                 GraphKind::upper_triangular, GraphKind::d_regular}) {
    if (s == to_string(k)) return k;
  }
  throw InputError("unknown graph kind `" + s + "`");
}

struct GeneratorSpec {
  GraphKind kind = GraphKind::erdos_renyi;
  std::size_t n = 0;
  // Edge probability (erdos_renyi) or noise probability (planted_perfect).
  double p = 0.0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
};

// Square n x n graphs, deterministic in (kind, params, seed).
inline BipartiteGraph generate(const GeneratorSpec& spec) {
  const auto n = spec.n;
  if (spec.p < 0.0 || spec.p > 1.0) throw ParameterError("edge probability must lie in [0, 1]");
  if (spec.kind == GraphKind::d_regular && spec.d > n) throw ParameterError("degree d exceeds n");
  std::mt19937_64 rng(spec.seed);
  BipartiteGraph g(n, n);
  auto sprinkle = [&](double p) {
    std::bernoulli_distribution coin(p);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex u = 0; u < n; ++u) {
        if (coin(rng)) g.add_edge(v, u);
      }
    }
  };
  auto permutation = [&] {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
  };

  switch (spec.kind) {
    case GraphKind::empty:
      break;
    case GraphKind::complete:
      g = BipartiteGraph::complete(n, n);
      break;
    case GraphKind::erdos_renyi:
      sprinkle(spec.p);
      break;
    case GraphKind::planted_perfect: {
      const auto hidden = permutation();
      sprinkle(spec.p);
      for (Vertex v = 0; v < n; ++v) g.add_edge(v, hidden[v]);
      break;
    }
    case GraphKind::upper_triangular:
      for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i; j < n; ++j) g.add_edge(i, j);
      }
      break;
    case GraphKind::d_regular: {
      // d shifted copies of one random permutation: exactly d-regular.
      const auto perm = permutation();
      for (Vertex v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < spec.d; ++k) g.add_edge(v, perm[(v + k) % n]);
      }
      break;
    }
  }
  return g;
}

}  // namespace dqlab
