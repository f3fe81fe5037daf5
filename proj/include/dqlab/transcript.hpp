#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"

namespace dqlab {

// Answer to a demand query: the 1-based position in the order of the first
// neighbour, and that neighbour's id.
struct DemandAnswer {
  std::size_t position = 0;
  Vertex vertex = 0;

  friend bool operator==(const DemandAnswer&, const DemandAnswer&) = default;
};

enum class QueryKind { demand, or_query };

struct TranscriptEntry {
  std::size_t round = 0;
  QueryKind kind = QueryKind::demand;
  Vertex v = 0;
  // The order for demand queries, the queried set for OR queries.
  std::vector<Vertex> payload;
  std::optional<DemandAnswer> demand_answer;
  bool or_answer = false;
};

struct RoundCounts {
  std::size_t demand = 0;
  std::size_t or_count = 0;
  // False for the implicit round that collects queries issued outside any
  // begin_round/end_round pair.
  bool declared = true;

  std::size_t total() const { return demand + or_count; }
};

struct QueryTranscript {
  std::vector<TranscriptEntry> entries;
  std::size_t demand_count = 0;
  std::size_t or_count = 0;
  std::vector<RoundCounts> rounds;

  std::size_t max_queries_per_round() const {
    std::size_t best = 0;
    for (const auto& r : rounds) best = std::max(best, r.total());
    return best;
  }
};

// Re-evaluates one entry against an explicit graph.
inline bool replay_entry(const TranscriptEntry& e, const BipartiteGraph& g) {
  if (e.v >= g.n_left()) return false;
  if (e.kind == QueryKind::or_query) {
    bool hit = false;
    for (auto u : e.payload) {
      if (u >= g.n_right()) return false;
      if (g.has_edge(e.v, u)) {
        hit = true;
        break;
      }
    }
    return hit == e.or_answer;
  }
  if (e.payload.size() != g.n_right()) return false;
  std::optional<DemandAnswer> expect;
  for (std::size_t i = 0; i < e.payload.size(); ++i) {
    if (e.payload[i] >= g.n_right()) return false;
    if (g.has_edge(e.v, e.payload[i])) {
      expect = DemandAnswer{i + 1, e.payload[i]};
      break;
    }
  }
  return expect == e.demand_answer;
}

// True iff every recorded answer is reproduced by g.
inline bool replay_transcript(const QueryTranscript& t, const BipartiteGraph& g) {
  return std::all_of(t.entries.begin(), t.entries.end(),
                     [&](const TranscriptEntry& e) { return replay_entry(e, g); });
}

inline nlohmann::json to_json(const TranscriptEntry& e) {
  nlohmann::json j;
  j["round"] = e.round;
  j["kind"] = e.kind == QueryKind::demand ? "demand" : "or";
  j["v"] = e.v;
  j["payload"] = e.payload;
  if (e.kind == QueryKind::or_query) {
    j["answer"] = e.or_answer;
  } else if (e.demand_answer) {
    j["answer"] = {{"position", e.demand_answer->position}, {"vertex", e.demand_answer->vertex}};
  } else {
    j["answer"] = nullptr;
  }
  return j;
}

inline TranscriptEntry entry_from_json(const nlohmann::json& j) {
  TranscriptEntry e;
  try {
    e.round = j.at("round").get<std::size_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "demand") {
      e.kind = QueryKind::demand;
    } else if (kind == "or") {
      e.kind = QueryKind::or_query;
    } else {
      throw InputError("unknown query kind `" + kind + "`");
    }
    e.v = j.at("v").get<Vertex>();
    e.payload = j.at("payload").get<std::vector<Vertex>>();
    const auto& a = j.at("answer");
    if (e.kind == QueryKind::or_query) {
      e.or_answer = a.get<bool>();
    } else if (!a.is_null()) {
      e.demand_answer = DemandAnswer{a.at("position").get<std::size_t>(), a.at("vertex").get<Vertex>()};
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("bad transcript entry: ") + ex.what());
  }
  return e;
}

// One JSON object per line, one line per query.
inline void write_jsonl(std::ostream& out, const QueryTranscript& t) {
  for (const auto& e : t.entries) out << to_json(e).dump() << '\n';
}

// Rebuilds entries and counters. Rounds read back as declared.
inline QueryTranscript read_jsonl(std::istream& in) {
  QueryTranscript t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw InputError(std::string("bad transcript line: ") + ex.what());
    }
    auto e = entry_from_json(j);
    if (!t.entries.empty() && e.round < t.entries.back().round) {
      throw InputError("transcript round indices decrease");
    }
    if (t.rounds.size() <= e.round) t.rounds.resize(e.round + 1);
    if (e.kind == QueryKind::demand) {
      ++t.demand_count;
      ++t.rounds[e.round].demand;
    } else {
      ++t.or_count;
      ++t.rounds[e.round].or_count;
    }
    t.entries.push_back(std::move(e));
  }
  return t;
}

}  // namespace dqlab
