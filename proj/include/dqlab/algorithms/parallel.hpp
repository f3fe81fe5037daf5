#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "dqlab/algorithms/auction.hpp"
#include "dqlab/errors.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

struct ParallelOutcome {
  Matching matching;
  std::size_t rounds_used = 0;
  std::size_t discarded = 0;
};

// Randomised parallel auction with delta = 1/t. Every round, each unmatched,
// non-discarded left vertex asks one demand query ordered by ascending price
// with ties broken by a fresh seeded shuffle. A vertex whose answer costs more
// than 1 (or that has no edge) is discarded. Each demanded right vertex goes
// up by one tick and is taken by its lowest-id demander, evicting its old
// partner. Stops after `rounds` rounds, or earlier once nobody is active.
inline ParallelOutcome run_parallel_matching(Oracle& o, std::uint32_t t, std::size_t rounds, std::uint64_t seed) {
  if (rounds < 1) throw ParameterError("parallel matching needs at least one round");
  PriceVector prices(o.n_right(), t);
  std::vector<std::optional<Vertex>> mate_left(o.n_left());
  std::vector<std::optional<Vertex>> mate_right(o.n_right());
  std::vector<bool> discarded(o.n_left(), false);
  std::vector<std::optional<Vertex>> demander(o.n_right());
  std::mt19937_64 rng(seed);
  std::vector<Vertex> ids(o.n_right());
  std::iota(ids.begin(), ids.end(), Vertex{0});

  ParallelOutcome out;
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<Vertex> active;
    for (Vertex v = 0; v < o.n_left(); ++v) {
      if (!discarded[v] && !mate_left[v]) active.push_back(v);
    }
    if (active.empty()) break;

    std::fill(demander.begin(), demander.end(), std::nullopt);
    o.begin_round();
    for (auto v : active) {
      std::shuffle(ids.begin(), ids.end(), rng);
      const auto answer = o.demand_query(v, RightOrder(prices.sort_by_price(ids)));
      if (!answer || prices.above_one(answer->vertex)) {
        discarded[v] = true;
        ++out.discarded;
        continue;
      }
      auto& d = demander[answer->vertex];
      if (!d || v < *d) d = v;
    }
    o.end_round();
    ++out.rounds_used;

    for (Vertex u = 0; u < o.n_right(); ++u) {
      if (!demander[u]) continue;
      prices.raise(u);
      if (mate_right[u]) mate_left[*mate_right[u]].reset();
      mate_right[u] = demander[u];
      mate_left[*demander[u]] = u;
    }
  }
  out.matching = Matching::from_mates(mate_left);
  return out;
}

inline Matching parallel_matching(Oracle& o, std::uint32_t t, std::size_t rounds, std::uint64_t seed) {
  return run_parallel_matching(o, t, rounds, seed).matching;
}

// Default round count ceil(8 ln(n) t^2) for delta = 1/t.
inline std::size_t default_parallel_rounds(std::size_t n, std::uint32_t t) {
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<std::size_t>(std::ceil(8.0 * ln_n * static_cast<double>(t) * static_cast<double>(t)));
}

}  // namespace dqlab
