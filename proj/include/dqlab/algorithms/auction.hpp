#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

// Right-vertex prices in integer ticks of epsilon = 1 / ticks_per_unit.
class PriceVector {
 public:
  PriceVector(std::size_t n_right, std::uint32_t ticks_per_unit)
      : ticks_(n_right, 0), per_unit_(ticks_per_unit) {
    if (ticks_per_unit < 1) throw ParameterError("ticks per unit must be at least 1");
  }

  std::uint32_t tick(Vertex u) const { return ticks_[u]; }
  std::uint32_t ticks_per_unit() const { return per_unit_; }
  std::size_t size() const { return ticks_.size(); }
  double price(Vertex u) const { return static_cast<double>(ticks_[u]) / per_unit_; }

  // price < 1
  bool below_one(Vertex u) const { return ticks_[u] < per_unit_; }
  // price > 1
  bool above_one(Vertex u) const { return ticks_[u] > per_unit_; }

  void raise(Vertex u) { ++ticks_[u]; }

  std::uint32_t max_tick() const {
    std::uint32_t m = 0;
    for (auto t : ticks_) m = std::max(m, t);
    return m;
  }

  // Stable bucket sort of `ids` by ascending tick.
  std::vector<Vertex> sort_by_price(const std::vector<Vertex>& ids) const {
    const auto top = max_tick();
    std::vector<std::size_t> start(static_cast<std::size_t>(top) + 2, 0);
    for (auto u : ids) ++start[ticks_[u] + 1];
    for (std::size_t b = 1; b < start.size(); ++b) start[b] += start[b - 1];
    std::vector<Vertex> out(ids.size());
    for (auto u : ids) out[start[ticks_[u]]++] = u;
    return out;
  }

 private:
  std::vector<std::uint32_t> ticks_;
  std::uint32_t per_unit_;
};

struct AuctionOutcome {
  Matching matching;
  PriceVector prices;
  std::size_t iterations = 0;
};

// Ascending auction with epsilon = 1/t. Prices sit on the right vertices and
// the pending set starts as all left vertices. Ties in price break by
// ascending right id.
inline AuctionOutcome run_ascending_auction(Oracle& o, std::uint32_t t) {
  PriceVector prices(o.n_right(), t);
  std::vector<std::optional<Vertex>> mate_left(o.n_left());
  std::vector<std::optional<Vertex>> mate_right(o.n_right());
  std::deque<Vertex> pending;
  for (Vertex v = 0; v < o.n_left(); ++v) pending.push_back(v);
  const auto ids = RightOrder::identity(o.n_right());
  const std::vector<Vertex> id_list(ids.begin(), ids.end());

  std::size_t iterations = 0;
  while (!pending.empty()) {
    const Vertex v = pending.front();
    pending.pop_front();
    ++iterations;
    const auto answer = o.demand_query(v, RightOrder(prices.sort_by_price(id_list)));
    if (!answer) continue;
    const Vertex u = answer->vertex;
    if (!prices.below_one(u)) continue;
    if (mate_right[u]) {
      mate_left[*mate_right[u]].reset();
      pending.push_back(*mate_right[u]);
    }
    mate_right[u] = v;
    mate_left[v] = u;
    prices.raise(u);
  }
  return {Matching::from_mates(mate_left), std::move(prices), iterations};
}

// |M| >= (1 - 1/t) OPT using at most n (t + 2) demand queries.
inline Matching ascending_auction(Oracle& o, std::uint32_t t) { return run_ascending_auction(o, t).matching; }

}  // namespace dqlab
