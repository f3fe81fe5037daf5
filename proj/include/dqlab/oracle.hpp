#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqlab/adversary.hpp"
#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/transcript.hpp"

namespace dqlab {

// Binary search for the first neighbour in an order using OR queries, kept as
// an explicit state machine so that several searches can advance in lockstep
// one query per round.
//
// The candidate answers are positions 1..n plus "absent" (n + 1). Each query
// asks about the unresolved window [lo, mid], which splits the candidates in
// half, so at most ceil(log2(n + 1)) queries are needed.
class DemandSearch {
 public:
  explicit DemandSearch(const RightOrder& order)
      : order_(order.begin(), order.end()), lo_(1), hi_(order.size() + 1) {}

  bool done() const { return lo_ == hi_; }

  std::vector<Vertex> next_set() const {
    const auto mid = split();
    return {order_.begin() + static_cast<std::ptrdiff_t>(lo_ - 1), order_.begin() + static_cast<std::ptrdiff_t>(mid)};
  }

  void feed(bool hit) {
    const auto mid = split();
    if (hit) {
      hi_ = mid;
    } else {
      lo_ = mid + 1;
    }
    ++issued_;
  }

  std::optional<DemandAnswer> result() const {
    if (!done()) throw ProtocolError("demand search still running");
    if (lo_ == order_.size() + 1) return std::nullopt;
    return DemandAnswer{lo_, order_[lo_ - 1]};
  }

  std::size_t queries_issued() const { return issued_; }

 private:
  std::size_t split() const { return lo_ + (hi_ - lo_ + 1) / 2 - 1; }

  std::vector<Vertex> order_;
  std::size_t lo_;
  std::size_t hi_;
  std::size_t issued_ = 0;
};

// The only path from an algorithm to the hidden graph. Counts every query,
// keeps the transcript, and enforces round bookkeeping and an optional
// per-round budget.
//
// Backed either by an explicit graph or by an Adversary. The adversary speaks
// OR queries in whole rounds only: a lone or_query outside an open round is
// wrapped in a round of its own, and demand queries are lowered to OR queries
// through DemandSearch.
class Oracle {
 public:
  explicit Oracle(const BipartiteGraph& g) : graph_(&g) {}
  explicit Oracle(Adversary& adv) : adversary_(&adv) {}

  std::size_t n_left() const { return graph_ ? graph_->n_left() : adversary_->config().n; }
  std::size_t n_right() const { return graph_ ? graph_->n_right() : adversary_->config().n; }
  bool backed_by_adversary() const { return adversary_ != nullptr; }

  void set_round_budget(std::optional<std::size_t> budget) { budget_ = budget; }
  std::optional<std::size_t> round_budget() const { return budget_; }

  const QueryTranscript& transcript() const { return transcript_; }
  bool in_round() const { return open_; }

  std::size_t begin_round() {
    if (open_) throw ProtocolError("begin_round while a round is open");
    if (adversary_ && transcript_.rounds.size() >= adversary_->config().r) {
      throw ProtocolError("adversary round budget of " + std::to_string(adversary_->config().r) + " exhausted");
    }
    implicit_open_ = false;
    transcript_.rounds.push_back(RoundCounts{0, 0, true});
    open_ = true;
    batch_done_ = false;
    return transcript_.rounds.size() - 1;
  }

  std::size_t end_round() {
    if (!open_) throw ProtocolError("end_round without begin_round");
    open_ = false;
    return transcript_.rounds.size() - 1;
  }

  std::optional<DemandAnswer> demand_query(Vertex v, const RightOrder& order) {
    check_left(v);
    if (order.size() != n_right()) throw InputError("order length does not match the right side");
    if (adversary_) return lower_demand(v, order);
    reserve(1);
    std::optional<DemandAnswer> answer;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (graph_->has_edge(v, order[i])) {
        answer = DemandAnswer{i + 1, order[i]};
        break;
      }
    }
    TranscriptEntry e;
    e.round = current_round();
    e.kind = QueryKind::demand;
    e.v = v;
    e.payload.assign(order.begin(), order.end());
    e.demand_answer = answer;
    transcript_.entries.push_back(std::move(e));
    ++transcript_.demand_count;
    ++transcript_.rounds.back().demand;
    return answer;
  }

  bool or_query(Vertex v, std::span<const Vertex> set) {
    check_left(v);
    check_set(set);
    if (adversary_) {
      if (open_) throw ProtocolError("adversary-backed oracle: use or_batch inside an explicit round");
      const OrQuery q{v, {set.begin(), set.end()}};
      return or_batch(std::span<const OrQuery>(&q, 1)).front();
    }
    reserve(1);
    bool hit = false;
    for (auto u : set) {
      if (graph_->has_edge(v, u)) {
        hit = true;
        break;
      }
    }
    record_or(v, set, hit);
    return hit;
  }

  // Issues a batch of OR queries within one round. For the adversary the
  // batch is the whole round; outside an explicit round one is opened and
  // closed around it.
  std::vector<bool> or_batch(std::span<const OrQuery> batch) {
    for (const auto& q : batch) {
      check_left(q.v);
      check_set(q.set);
    }
    if (!adversary_) {
      std::vector<bool> out;
      out.reserve(batch.size());
      for (const auto& q : batch) out.push_back(or_query(q.v, q.set));
      return out;
    }
    const bool wrap = !open_;
    if (wrap) begin_round();
    if (batch_done_) throw ProtocolError("adversary answers one batch per round");
    reserve(batch.size());
    auto result = adversary_->answer_round(batch);
    batch_done_ = true;
    for (std::size_t i = 0; i < batch.size(); ++i) record_or(batch[i].v, batch[i].set, result.answers[i]);
    if (wrap) end_round();
    return std::move(result.answers);
  }

 private:
  std::optional<DemandAnswer> lower_demand(Vertex v, const RightOrder& order) {
    DemandSearch search(order);
    while (!search.done()) {
      const auto set = search.next_set();
      search.feed(or_query(v, set));
    }
    return search.result();
  }

  void check_left(Vertex v) const {
    if (v >= n_left()) throw InputError("left vertex " + std::to_string(v) + " out of range");
  }
  void check_set(std::span<const Vertex> set) const {
    for (auto u : set) {
      if (u >= n_right()) throw InputError("right vertex " + std::to_string(u) + " out of range");
    }
  }

  std::size_t current_round() const { return transcript_.rounds.size() - 1; }

  // Opens the implicit round if needed and charges k queries to the budget.
  void reserve(std::size_t k) {
    if (!open_ && !implicit_open_) {
      transcript_.rounds.push_back(RoundCounts{0, 0, false});
      implicit_open_ = true;
    }
    if (budget_ && transcript_.rounds.back().total() + k > *budget_) {
      throw BudgetError("round " + std::to_string(current_round()) + " exceeds its budget of " +
                        std::to_string(*budget_) + " queries");
    }
  }

  void record_or(Vertex v, std::span<const Vertex> set, bool answer) {
    TranscriptEntry e;
    e.round = current_round();
    e.kind = QueryKind::or_query;
    e.v = v;
    e.payload.assign(set.begin(), set.end());
    e.or_answer = answer;
    transcript_.entries.push_back(std::move(e));
    ++transcript_.or_count;
    ++transcript_.rounds.back().or_count;
  }

  const BipartiteGraph* graph_ = nullptr;
  Adversary* adversary_ = nullptr;
  std::optional<std::size_t> budget_;
  QueryTranscript transcript_;
  bool open_ = false;
  bool implicit_open_ = false;
  bool batch_done_ = false;
};

// Answers a demand query with OR queries only, at most ceil(log2(n + 1)).
inline std::optional<DemandAnswer> simulate_demand_with_or(Oracle& o, Vertex v, const RightOrder& order) {
  if (v >= o.n_left()) throw InputError("left vertex " + std::to_string(v) + " out of range");
  if (order.size() != o.n_right()) throw InputError("order length does not match the right side");
  DemandSearch search(order);
  while (!search.done()) {
    const auto set = search.next_set();
    search.feed(o.or_query(v, set));
  }
  return search.result();
}

}  // namespace dqlab
