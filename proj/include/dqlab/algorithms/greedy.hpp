#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

namespace detail {

inline void require_left_permutation(std::span<const Vertex> arrival, std::size_t n_left) {
  std::vector<bool> seen(n_left, false);
  if (arrival.size() != n_left) throw InputError("arrival sequence must list every left vertex once");
  for (auto v : arrival) {
    if (v >= n_left || seen[v]) throw InputError("arrival sequence must list every left vertex once");
    seen[v] = true;
  }
}

// One demand query per arriving vertex; unmatched right vertices come first,
// each group in `priority` order.
inline Matching greedy_by_priority(Oracle& o, std::span<const Vertex> arrival, std::span<const Vertex> priority) {
  require_left_permutation(arrival, o.n_left());
  std::vector<bool> taken(o.n_right(), false);
  std::vector<std::optional<Vertex>> mate(o.n_left());
  std::vector<Vertex> order;
  order.reserve(o.n_right());
  for (auto v : arrival) {
    order.clear();
    for (auto u : priority) {
      if (!taken[u]) order.push_back(u);
    }
    for (auto u : priority) {
      if (taken[u]) order.push_back(u);
    }
    const auto answer = o.demand_query(v, RightOrder(order));
    if (answer && !taken[answer->vertex]) {
      taken[answer->vertex] = true;
      mate[v] = answer->vertex;
    }
  }
  return Matching::from_mates(mate);
}

}  // namespace detail

// Online greedy: a maximal matching, hence at least half of the optimum.
inline Matching greedy_online(Oracle& o, std::span<const Vertex> arrival) {
  const auto ids = RightOrder::identity(o.n_right());
  return detail::greedy_by_priority(o, arrival, ids.view());
}

inline Matching greedy_online(Oracle& o) {
  const auto arrival = RightOrder::identity(o.n_left());
  return greedy_online(o, arrival.view());
}

// Ranking: one uniformly random priority over the right vertices, drawn from
// `seed`, shared by all queries. Left vertices arrive in id order.
inline Matching ranking_greedy(Oracle& o, std::uint64_t seed) {
  std::vector<Vertex> priority(o.n_right());
  std::iota(priority.begin(), priority.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(priority.begin(), priority.end(), rng);
  const auto arrival = RightOrder::identity(o.n_left());
  return detail::greedy_by_priority(o, arrival.view(), priority);
}

}  // namespace dqlab
