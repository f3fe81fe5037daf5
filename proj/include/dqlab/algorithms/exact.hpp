#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dqlab/algorithms/auction.hpp"
#include "dqlab/algorithms/augmenting_path.hpp"
#include "dqlab/errors.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

inline std::uint32_t ceil_sqrt(std::size_t n) {
  std::uint32_t s = 0;
  while (static_cast<std::size_t>(s) * s < n) ++s;
  return s;
}

// Maximum matching in O(n^{3/2}) demand queries: an auction with
// epsilon = 1/ceil(sqrt n) leaves a deficiency of at most sqrt n, which is
// closed one augmenting path at a time.
inline Matching max_matching_exact(Oracle& o) {
  if (o.n_left() != o.n_right()) throw PreconditionError("exact algorithm needs a square graph");
  const auto n = o.n_left();
  const std::uint32_t t = std::max<std::uint32_t>(1, ceil_sqrt(n));
  const auto start = ascending_auction(o, t);

  std::vector<std::optional<Vertex>> mate_left(n);
  for (const auto& [v, u] : start.pairs) mate_left[v] = u;
  for (;;) {
    const auto pa = PartialAssignment::from_matching(n, n, Matching::from_mates(mate_left));
    const auto path = find_augmenting_path(o, pa);
    if (!path) break;
    augment(mate_left, *path);
  }
  return Matching::from_mates(mate_left);
}

}  // namespace dqlab
