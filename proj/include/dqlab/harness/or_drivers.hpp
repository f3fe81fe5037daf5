#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dqlab/adversary.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/oracle.hpp"
#include "dqlab/reference.hpp"

namespace dqlab {

struct BatchedGreedyOutcome {
  Matching matching;
  std::size_t rounds_used = 0;
  std::size_t searches_completed = 0;
};

// Online greedy lowered to OR queries and batched into rounds. Up to
// `per_round` demand searches (one per left vertex, in id order) advance in
// lockstep, one OR query each per round. A finished search matches its vertex
// if the answer is still free; if a concurrent search took it first the
// vertex retries with a fresh order.
inline BatchedGreedyOutcome batched_greedy_or(Oracle& o, std::size_t rounds, std::size_t per_round) {
  struct Slot {
    Vertex v;
    DemandSearch search;
  };
  std::vector<bool> taken(o.n_right(), false);
  std::vector<std::optional<Vertex>> mate(o.n_left());
  std::deque<Vertex> pending;
  for (Vertex v = 0; v < o.n_left(); ++v) pending.push_back(v);
  std::vector<Slot> slots;
  BatchedGreedyOutcome out;

  auto greedy_order = [&] {
    std::vector<Vertex> order;
    order.reserve(o.n_right());
    for (Vertex u = 0; u < o.n_right(); ++u) {
      if (!taken[u]) order.push_back(u);
    }
    for (Vertex u = 0; u < o.n_right(); ++u) {
      if (taken[u]) order.push_back(u);
    }
    return RightOrder(std::move(order));
  };
  // Returns true if v has to retry.
  auto settle = [&](Vertex v, const DemandSearch& s) {
    ++out.searches_completed;
    const auto r = s.result();
    if (!r) return false;
    if (taken[r->vertex]) return true;
    taken[r->vertex] = true;
    mate[v] = r->vertex;
    return false;
  };

  for (std::size_t round = 0; round < rounds; ++round) {
    while (slots.size() < per_round && !pending.empty()) {
      const Vertex v = pending.front();
      pending.pop_front();
      DemandSearch s(greedy_order());
      if (s.done()) {
        if (settle(v, s)) pending.push_front(v);
        continue;
      }
      slots.push_back({v, std::move(s)});
    }
    if (slots.empty()) break;

    std::vector<OrQuery> batch;
    batch.reserve(slots.size());
    for (const auto& s : slots) batch.push_back({s.v, s.search.next_set()});
    o.begin_round();
    const auto answers = o.or_batch(batch);
    o.end_round();
    ++out.rounds_used;

    std::vector<Slot> still_running;
    std::vector<Vertex> retry;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      slots[i].search.feed(answers[i]);
      if (!slots[i].search.done()) {
        still_running.push_back(std::move(slots[i]));
      } else if (settle(slots[i].v, slots[i].search)) {
        retry.push_back(slots[i].v);
      }
    }
    for (auto it = retry.rbegin(); it != retry.rend(); ++it) pending.push_front(*it);
    slots = std::move(still_running);
  }
  out.matching = Matching::from_mates(mate);
  return out;
}

// A non-adaptive random stream of OR queries: `rounds` batches of `per_round`
// queries. Left vertices come either uniformly or from a small hot pool (to
// provoke heavy vertices); set sizes are log-uniform in [1, n].
inline std::vector<std::vector<OrQuery>> random_query_stream(std::size_t n, std::size_t rounds, std::size_t per_round,
                                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> any_vertex(0, static_cast<Vertex>(n - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vertex> hot(1 + rng() % 4);
  for (auto& h : hot) h = any_vertex(rng);
  const double hot_share = unit(rng);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  std::vector<std::vector<OrQuery>> stream(rounds);
  for (auto& batch : stream) {
    batch.resize(per_round);
    for (auto& q : batch) {
      q.v = unit(rng) < hot_share ? hot[rng() % hot.size()] : any_vertex(rng);
      auto size = static_cast<std::size_t>(std::exp(unit(rng) * log_n));
      size = std::clamp<std::size_t>(size, 1, n);
      // Partial Fisher-Yates over the shared pool.
      for (std::size_t i = 0; i < size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      q.set.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    }
  }
  return stream;
}

// Everything an adversary experiment reports after the interaction stops.
struct AdversaryRun {
  std::vector<RoundReport> reports;
  GapReport gap;
  std::size_t yes_cover_total = 0;
  std::size_t dense_min_degree = 0;
  bool sparse_consistent = false;
  bool dense_consistent = false;
  bool constraints_ok = false;
  std::size_t algorithm_matching = 0;
  QueryTranscript transcript;

  // dense OPT = n, both completions consistent, every round within its
  // constraints, min degree > n/2, sparse OPT within twice the YES cover.
  bool indistinguishable(std::size_t n) const {
    return sparse_consistent && dense_consistent && constraints_ok && dense_min_degree * 2 > n &&
           gap.dense_opt == n && gap.sparse_opt <= 2 * yes_cover_total;
  }
};

inline AdversaryRun audit_adversary(const Adversary& adv, const Oracle& o) {
  AdversaryRun run;
  run.reports = adv.reports();
  const auto sparse = adv.completion_sparse();
  const auto dense = adv.completion_dense();
  run.sparse_consistent = verify_transcript(adv, o.transcript(), sparse);
  run.dense_consistent = verify_transcript(adv, o.transcript(), dense);
  run.dense_min_degree = min_degree(dense);
  run.gap.sparse_opt = max_matching_reference(sparse).size();
  run.gap.dense_opt = max_matching_reference(dense).size();
  if (run.gap.sparse_opt > 0) {
    run.gap.ratio = static_cast<double>(run.gap.dense_opt) / static_cast<double>(run.gap.sparse_opt);
  }
  run.yes_cover_total = adv.yes_cover_total();
  run.constraints_ok = adv.all_reports_ok();
  run.transcript = o.transcript();
  return run;
}

enum class AdversaryDriver { batched_greedy, random_stream };

inline AdversaryDriver parse_adversary_driver(const std::string& s) {
  if (s == "greedy" || s == "batched_greedy") return AdversaryDriver::batched_greedy;
  if (s == "random") return AdversaryDriver::random_stream;
  throw InputError("unknown adversary driver `" + s + "` (expected greedy or random)");
}

// Runs one full r x q interaction and audits both completions.
inline AdversaryRun run_adversary(std::size_t n, std::size_t r, std::size_t q, AdversaryDriver driver,
                                  std::uint64_t seed) {
  auto adv = new_adversary(n, r, q);
  Oracle o(adv);
  std::size_t matched = 0;
  if (driver == AdversaryDriver::batched_greedy) {
    matched = batched_greedy_or(o, r, q).matching.size();
  } else {
    for (const auto& batch : random_query_stream(n, r, q, seed)) {
      o.begin_round();
      o.or_batch(batch);
      o.end_round();
    }
  }
  auto run = audit_adversary(adv, o);
  run.algorithm_matching = matched;
  return run;
}

}  // namespace dqlab
