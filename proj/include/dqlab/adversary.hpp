#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/reference.hpp"
#include "dqlab/transcript.hpp"

namespace dqlab {

// Parameters of the r-round, q-queries-per-round OR adversary. All logarithms
// are base 2.
struct AdversaryConfig {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t q = 0;
  // Big-query threshold: ceil(n * sqrt(log2 n) / sqrt(2qr)).
  std::size_t theta = 0;
  // Gap parameter r * sqrt(q r log2 n) / n.
  double alpha = 0.0;

  double log_n() const { return std::log2(static_cast<double>(n)); }

  // A vertex is heavy when it has at least n/(2r) small-query edges; kept in
  // integers as count * 2r >= n.
  bool reaches_heavy(std::size_t count) const { return count * 2 * r >= n; }

  // Greedy set-cover bound on the hitting set: ceil((n/theta)(1 + ln q)).
  std::size_t hitting_set_bound() const {
    return static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) / static_cast<double>(theta) * (1.0 + std::log(static_cast<double>(q)))));
  }

  // Heavy vertices: at most 2 q theta / (n/(2r)) = 2 sqrt(2 q r log2 n).
  std::size_t heavy_bound() const {
    return static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(2.0 * static_cast<double>(q * r) * log_n())));
  }

  // Audited per-round bound on the YES cover.
  std::size_t yes_budget() const { return 2 * hitting_set_bound() + heavy_bound(); }
};

inline double adversary_alpha(std::size_t n, std::size_t r, std::size_t q) {
  const double dn = static_cast<double>(n);
  return static_cast<double>(r) * std::sqrt(static_cast<double>(q * r) * std::log2(dn)) / dn;
}

// Smallest n >= 2 with alpha * n < n / 2 for the given (r, q).
inline std::size_t minimal_adversary_n(std::size_t r, std::size_t q) {
  auto ok = [&](std::size_t n) { return adversary_alpha(n, r, q) < 0.5; };
  std::size_t hi = 2;
  while (!ok(hi)) hi *= 2;
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const auto mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return std::max<std::size_t>(hi, 2);
}

inline AdversaryConfig make_adversary_config(std::size_t n, std::size_t r, std::size_t q) {
  if (r < 1 || q < 1 || n < 2) throw ParameterError("adversary needs n >= 2, r >= 1, q >= 1");
  AdversaryConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.q = q;
  cfg.alpha = adversary_alpha(n, r, q);
  if (!(cfg.alpha < 0.5)) {
    throw ParameterError("alpha*n = " + std::to_string(cfg.alpha * static_cast<double>(n)) +
                         " is not below n/2; for r=" + std::to_string(r) + ", q=" + std::to_string(q) +
                         " the smallest admissible n is " + std::to_string(minimal_adversary_n(r, q)));
  }
  const double dn = static_cast<double>(n);
  cfg.theta = static_cast<std::size_t>(std::ceil(dn * std::sqrt(std::log2(dn)) / std::sqrt(2.0 * static_cast<double>(q * r))));
  cfg.theta = std::max<std::size_t>(cfg.theta, 1);
  return cfg;
}

enum class EdgeState { undecided, yes, no };

struct EdgeRecord {
  EdgeState state = EdgeState::undecided;
  std::size_t round = 0;
};

// Write-once per-edge decisions. Packed as 0 = undecided, otherwise
// 2 * (round + 1) + (yes ? 1 : 0).
class EdgeLedger {
 public:
  EdgeLedger() = default;
  explicit EdgeLedger(std::size_t n) : n_(n), codes_(n * n, 0) {}

  std::size_t n() const { return n_; }

  EdgeRecord at(Vertex v, Vertex u) const {
    const auto c = codes_[index(v, u)];
    if (c == 0) return {};
    return {(c & 1U) ? EdgeState::yes : EdgeState::no, static_cast<std::size_t>(c / 2 - 1)};
  }
  bool undecided(Vertex v, Vertex u) const { return codes_[index(v, u)] == 0; }
  bool is_yes(Vertex v, Vertex u) const { return (codes_[index(v, u)] & 1U) != 0; }
  bool is_no(Vertex v, Vertex u) const {
    const auto c = codes_[index(v, u)];
    return c != 0 && (c & 1U) == 0;
  }

  void decide(Vertex v, Vertex u, bool yes, std::size_t round) {
    auto& c = codes_[index(v, u)];
    if (c != 0) throw ProtocolError("ledger edge decided twice");
    c = static_cast<std::uint16_t>(2 * (round + 1) + (yes ? 1 : 0));
  }

  friend bool operator==(const EdgeLedger&, const EdgeLedger&) = default;

 private:
  std::size_t index(Vertex v, Vertex u) const { return static_cast<std::size_t>(v) * n_ + u; }

  std::size_t n_ = 0;
  std::vector<std::uint16_t> codes_;
};

struct OrQuery {
  Vertex v = 0;
  std::vector<Vertex> set;
};

// Per-round audit of the adversary's own constraints.
struct RoundReport {
  std::size_t round = 0;
  std::size_t queries = 0;
  std::size_t big = 0;
  std::size_t small = 0;
  std::size_t pre_answered = 0;
  // Small queries already answered by the YES edges of the hitting set.
  std::size_t small_hit_by_big = 0;
  std::size_t hitting_set_size = 0;
  std::size_t heavy_count = 0;
  std::size_t yes_edges = 0;
  std::size_t no_edges = 0;
  std::size_t max_no_degree = 0;
  // Hitting set plus heavy vertices: every YES edge of the round has an
  // endpoint in this set.
  std::size_t yes_cover_size = 0;
  std::size_t yes_budget = 0;

  bool budget_ok = true;
  bool no_degree_ok = true;
  bool yes_cover_ok = true;
  bool cover_valid = true;
  bool answers_determined = true;

  bool all_ok() const { return budget_ok && no_degree_ok && yes_cover_ok && cover_valid && answers_determined; }
};

inline nlohmann::json to_json(const RoundReport& r) {
  return {{"round", r.round},
          {"queries", r.queries},
          {"big", r.big},
          {"small", r.small},
          {"pre_answered", r.pre_answered},
          {"small_hit_by_big", r.small_hit_by_big},
          {"hitting_set_size", r.hitting_set_size},
          {"heavy_count", r.heavy_count},
          {"yes_edges", r.yes_edges},
          {"no_edges", r.no_edges},
          {"max_no_degree", r.max_no_degree},
          {"yes_cover_size", r.yes_cover_size},
          {"yes_budget", r.yes_budget},
          {"log_base", 2},
          {"budget_ok", r.budget_ok},
          {"no_degree_ok", r.no_degree_ok},
          {"yes_cover_ok", r.yes_cover_ok},
          {"cover_valid", r.cover_valid},
          {"answers_determined", r.answers_determined}};
}

struct RoundResult {
  std::vector<bool> answers;
  RoundReport report;
};

struct AdversaryOptions {
  // When false, rounds beyond r or batches beyond q are still answered and
  // the report flags record the violation instead of throwing.
  bool strict = true;
};

class Adversary {
 public:
  explicit Adversary(AdversaryConfig cfg, AdversaryOptions opts = {})
      : cfg_(cfg), opts_(opts), ledger_(cfg.n) {}

  const AdversaryConfig& config() const { return cfg_; }
  const EdgeLedger& ledger() const { return ledger_; }
  const std::vector<RoundReport>& reports() const { return reports_; }
  std::size_t rounds_played() const { return reports_.size(); }
  std::size_t rounds_left() const { return rounds_played() >= cfg_.r ? 0 : cfg_.r - rounds_played(); }

  // Answers one round of OR queries. The whole batch is classified against
  // the ledger as it stood before the round, so answers do not depend on
  // the order of queries within the batch.
  RoundResult answer_round(std::span<const OrQuery> queries) {
    const std::size_t round = rounds_played();
    const bool over_budget = round >= cfg_.r || queries.size() > cfg_.q;
    if (over_budget && opts_.strict) {
      throw ProtocolError(round >= cfg_.r ? "adversary round budget exhausted"
                                          : "round has " + std::to_string(queries.size()) +
                                                " queries, budget is " + std::to_string(cfg_.q));
    }
    const Vertex n = static_cast<Vertex>(cfg_.n);

    RoundReport rep;
    rep.round = round;
    rep.queries = queries.size();
    rep.budget_ok = !over_budget;
    rep.yes_budget = cfg_.yes_budget();

    enum class Kind { pre, big, small };
    std::vector<Kind> kind(queries.size(), Kind::pre);
    std::vector<bool> answers(queries.size(), false);
    std::vector<std::vector<Vertex>> stripped(queries.size());
    std::vector<std::vector<Vertex>> sets(queries.size());

    for (std::size_t i = 0; i < queries.size(); ++i) {
      const auto& qy = queries[i];
      if (qy.v >= n) throw InputError("OR query left vertex out of range");
      auto& s = sets[i];
      s = qy.set;
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (!s.empty() && s.back() >= n) throw InputError("OR query right vertex out of range");
      bool has_yes = false;
      for (auto u : s) {
        if (ledger_.is_yes(qy.v, u)) {
          has_yes = true;
          break;
        }
        if (ledger_.undecided(qy.v, u)) stripped[i].push_back(u);
      }
      if (has_yes) {
        answers[i] = true;
        stripped[i].clear();
        ++rep.pre_answered;
      } else if (stripped[i].empty()) {
        ++rep.pre_answered;
      } else if (stripped[i].size() >= cfg_.theta) {
        kind[i] = Kind::big;
        ++rep.big;
      } else {
        kind[i] = Kind::small;
        ++rep.small;
      }
    }

    std::vector<Edge> yes_written;
    std::vector<bool> in_cover_right(n, false);
    std::vector<bool> in_cover_left(n, false);

    // Big queries: greedy hitting set over right vertices, then every
    // undecided edge at a hitting-set vertex becomes YES.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (kind[i] == Kind::big) open.push_back(i);
    }
    std::vector<Vertex> hitting;
    std::vector<std::size_t> cover_count(n);
    while (!open.empty()) {
      std::fill(cover_count.begin(), cover_count.end(), 0);
      for (auto i : open) {
        for (auto u : stripped[i]) ++cover_count[u];
      }
      const auto best = static_cast<Vertex>(std::max_element(cover_count.begin(), cover_count.end()) -
                                            cover_count.begin());
      hitting.push_back(best);
      std::erase_if(open, [&](std::size_t i) {
        return std::binary_search(stripped[i].begin(), stripped[i].end(), best);
      });
    }
    for (auto u : hitting) {
      in_cover_right[u] = true;
      for (Vertex v = 0; v < n; ++v) {
        if (ledger_.undecided(v, u)) {
          ledger_.decide(v, u, true, round);
          yes_written.push_back({v, u});
        }
      }
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (kind[i] == Kind::big) answers[i] = true;
    }
    rep.hitting_set_size = hitting.size();

    // Small queries still open: heavy endpoints get YES, everything else NO.
    std::vector<Edge> small_edges;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (kind[i] != Kind::small) continue;
      const bool hit = std::any_of(stripped[i].begin(), stripped[i].end(),
                                   [&](Vertex u) { return in_cover_right[u]; });
      if (hit) {
        answers[i] = true;
        kind[i] = Kind::pre;
        ++rep.small_hit_by_big;
        continue;
      }
      for (auto u : stripped[i]) small_edges.push_back({queries[i].v, u});
    }
    std::sort(small_edges.begin(), small_edges.end());
    small_edges.erase(std::unique(small_edges.begin(), small_edges.end()), small_edges.end());

    std::vector<std::size_t> left_count(n, 0);
    std::vector<std::size_t> right_count(n, 0);
    for (const auto& e : small_edges) {
      ++left_count[e.left];
      ++right_count[e.right];
    }
    std::size_t heavy = 0;
    for (Vertex w = 0; w < n; ++w) {
      if (cfg_.reaches_heavy(left_count[w])) {
        in_cover_left[w] = true;
        ++heavy;
      }
      if (cfg_.reaches_heavy(right_count[w])) {
        in_cover_right[w] = true;
        ++heavy;
      }
    }
    rep.heavy_count = heavy;

    std::vector<std::size_t> no_left(n, 0);
    std::vector<std::size_t> no_right(n, 0);
    for (const auto& e : small_edges) {
      const bool yes = in_cover_left[e.left] || in_cover_right[e.right];
      ledger_.decide(e.left, e.right, yes, round);
      if (yes) {
        yes_written.push_back(e);
      } else {
        ++no_left[e.left];
        ++no_right[e.right];
        ++rep.no_edges;
      }
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (kind[i] != Kind::small) continue;
      answers[i] = std::any_of(stripped[i].begin(), stripped[i].end(),
                               [&](Vertex u) { return ledger_.is_yes(queries[i].v, u); });
    }

    rep.yes_edges = yes_written.size();
    rep.max_no_degree = std::max(no_left.empty() ? 0 : *std::max_element(no_left.begin(), no_left.end()),
                                 no_right.empty() ? 0 : *std::max_element(no_right.begin(), no_right.end()));
    rep.no_degree_ok = rep.max_no_degree * 2 * cfg_.r < cfg_.n;
    rep.yes_cover_size = hitting.size() + heavy;
    rep.yes_cover_ok = rep.yes_cover_size <= rep.yes_budget;
    rep.cover_valid = std::all_of(yes_written.begin(), yes_written.end(), [&](const Edge& e) {
      return in_cover_left[e.left] || in_cover_right[e.right];
    });
    // Every answer must now follow from the ledger alone.
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const auto v = queries[i].v;
      const bool any_yes = std::any_of(sets[i].begin(), sets[i].end(), [&](Vertex u) { return ledger_.is_yes(v, u); });
      const bool all_no = std::all_of(sets[i].begin(), sets[i].end(), [&](Vertex u) { return ledger_.is_no(v, u); });
      if (answers[i] ? !any_yes : !all_no) rep.answers_determined = false;
    }

    reports_.push_back(rep);
    return {std::move(answers), rep};
  }

  // Case (a): every undecided edge is absent.
  BipartiteGraph completion_sparse() const {
    BipartiteGraph g(cfg_.n, cfg_.n);
    for (Vertex v = 0; v < cfg_.n; ++v) {
      for (Vertex u = 0; u < cfg_.n; ++u) {
        if (ledger_.is_yes(v, u)) g.add_edge(v, u);
      }
    }
    return g;
  }

  // Case (b): every undecided edge is present.
  BipartiteGraph completion_dense() const {
    auto g = BipartiteGraph::complete(cfg_.n, cfg_.n);
    for (Vertex v = 0; v < cfg_.n; ++v) {
      for (Vertex u = 0; u < cfg_.n; ++u) {
        if (ledger_.is_no(v, u)) g.remove_edge(v, u);
      }
    }
    return g;
  }

  std::size_t yes_cover_total() const {
    std::size_t total = 0;
    for (const auto& r : reports_) total += r.yes_cover_size;
    return total;
  }

  bool all_reports_ok() const {
    return std::all_of(reports_.begin(), reports_.end(), [](const RoundReport& r) { return r.all_ok(); });
  }

 private:
  AdversaryConfig cfg_;
  AdversaryOptions opts_;
  EdgeLedger ledger_;
  std::vector<RoundReport> reports_;
};

inline Adversary new_adversary(std::size_t n, std::size_t r, std::size_t q, AdversaryOptions opts = {}) {
  return Adversary(make_adversary_config(n, r, q), opts);
}

// Replays the OR transcript of an adversary interaction against a completion.
inline bool verify_transcript(const Adversary& adv, const QueryTranscript& t, const BipartiteGraph& g) {
  for (const auto& e : t.entries) {
    if (e.kind == QueryKind::demand) {
      throw UnsupportedError("adversary transcripts hold OR queries only; lower demand queries first");
    }
  }
  if (g.n_left() != adv.config().n || g.n_right() != adv.config().n) return false;
  return replay_transcript(t, g);
}

struct GapReport {
  std::size_t sparse_opt = 0;
  std::size_t dense_opt = 0;
  // dense / sparse; absent when the sparse completion has no edges.
  std::optional<double> ratio;
};

inline GapReport gap_report(const Adversary& adv) {
  GapReport gap;
  gap.sparse_opt = max_matching_reference(adv.completion_sparse()).size();
  gap.dense_opt = max_matching_reference(adv.completion_dense()).size();
  if (gap.sparse_opt > 0) gap.ratio = static_cast<double>(gap.dense_opt) / static_cast<double>(gap.sparse_opt);
  return gap;
}

inline nlohmann::json to_json(const GapReport& g) {
  nlohmann::json j = {{"sparse_opt", g.sparse_opt}, {"dense_opt", g.dense_opt}};
  j["ratio"] = g.ratio ? nlohmann::json(*g.ratio) : nlohmann::json(nullptr);
  return j;
}

// Minimum degree over both sides of a graph.
inline std::size_t min_degree(const BipartiteGraph& g) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < g.n_left(); ++v) best = std::min(best, g.degree(v));
  for (auto d : g.right_degrees()) best = std::min(best, d);
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

}  // namespace dqlab
