#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

// Checks a claimed maximum matching m of size k through the oracle:
//   (a) one demand query per pair with the partner placed first must answer
//       position 1,
//   (b) |block_left| + |block_right| must equal 2n - k (else
//       CertificateShapeError),
//   (c) one OR query per v in block_left against block_right must be false.
// Costs at most k demand and |block_left| OR queries.
inline bool verify_maximality_certificate(Oracle& o, const Matching& m, std::span<const Vertex> block_left,
                                          std::span<const Vertex> block_right) {
  if (o.n_left() != o.n_right()) throw PreconditionError("certificates are defined for square graphs");
  const auto n = o.n_left();
  auto distinct_in_range = [&](std::span<const Vertex> ids, const char* side) {
    std::vector<bool> seen(n, false);
    for (auto w : ids) {
      if (w >= n) throw InputError(std::string(side) + " block vertex out of range");
      if (seen[w]) throw CertificateShapeError(std::string(side) + " block repeats vertex " + std::to_string(w));
      seen[w] = true;
    }
  };
  distinct_in_range(block_left, "left");
  distinct_in_range(block_right, "right");
  const auto k = m.size();
  if (k > n || block_left.size() + block_right.size() != 2 * n - k) {
    throw CertificateShapeError("blocks have " + std::to_string(block_left.size() + block_right.size()) +
                                " vertices, expected 2n - k = " + std::to_string(k > n ? 0 : 2 * n - k));
  }

  std::vector<bool> used_left(n, false);
  std::vector<bool> used_right(n, false);
  for (const auto& [v, u] : m.pairs) {
    if (v >= n || u >= n) throw InputError("matching pair out of range");
    if (used_left[v] || used_right[u]) return false;
    used_left[v] = used_right[u] = true;
  }

  std::vector<Vertex> order(n);
  for (const auto& [v, u] : m.pairs) {
    order.clear();
    order.push_back(u);
    for (Vertex w = 0; w < n; ++w) {
      if (w != u) order.push_back(w);
    }
    const auto answer = o.demand_query(v, RightOrder(order));
    if (!answer || answer->position != 1) return false;
  }
  for (auto v : block_left) {
    if (o.or_query(v, block_right)) return false;
  }
  return true;
}

}  // namespace dqlab
