#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqlab/algorithms/auction.hpp"
#include "dqlab/algorithms/exact.hpp"
#include "dqlab/algorithms/greedy.hpp"
#include "dqlab/algorithms/parallel.hpp"
#include "dqlab/errors.hpp"
#include "dqlab/harness/generators.hpp"
#include "dqlab/harness/or_drivers.hpp"
#include "dqlab/oracle.hpp"
#include "dqlab/reference.hpp"

namespace dqlab {

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"greedy", "ranking", "auction", "exact",
                                                 "parallel", "adversary_greedy", "adversary_random"};
  return names;
}

struct AlgorithmSpec {
  std::string name = "auction";
  std::uint32_t ticks = 8;
  // parallel: rounds to run (0 = default); adversary_*: r.
  std::size_t rounds = 0;
  // adversary_*: q.
  std::size_t queries_per_round = 0;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  GeneratorSpec graph;
  AlgorithmSpec algorithm;
  std::size_t reps = 1;
  std::optional<std::size_t> round_budget;
  bool timing = false;
};

inline void validate(const ExperimentConfig& cfg) {
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), cfg.algorithm.name) == names.end()) {
    throw InputError("unknown algorithm `" + cfg.algorithm.name + "`");
  }
  if (cfg.algorithm.ticks < 1) throw InputError("epsilon_ticks must be at least 1");
  if (cfg.reps < 1) throw InputError("reps must be at least 1");
  if (cfg.algorithm.name.starts_with("adversary_") && (cfg.algorithm.rounds < 1 || cfg.algorithm.queries_per_round < 1)) {
    throw InputError("adversary runs need rounds and queries_per_round");
  }
}

// Flat `key = value` config; `#` comments.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::strip_comment(line);
    if (detail::is_blank(body)) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    auto as_uint = [&]() -> std::uint64_t {
      try {
        std::size_t used = 0;
        const auto x = std::stoull(value, &used);
        if (used != value.size() || value.starts_with('-')) throw std::invalid_argument(value);
        return x;
      } catch (const std::exception&) {
        throw InputError("config line " + std::to_string(lineno) + ": `" + key + "` needs a non-negative integer");
      }
    };
    auto as_double = [&] {
      try {
        std::size_t used = 0;
        const auto x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
      } catch (const std::exception&) {
        throw InputError("config line " + std::to_string(lineno) + ": `" + key + "` needs a number");
      }
    };
    if (key == "graph") {
      cfg.graph.kind = parse_graph_kind(value);
    } else if (key == "n") {
      cfg.graph.n = as_uint();
    } else if (key == "p") {
      cfg.graph.p = as_double();
    } else if (key == "d") {
      cfg.graph.d = as_uint();
    } else if (key == "graph_seed") {
      cfg.graph.seed = as_uint();
    } else if (key == "algorithm") {
      cfg.algorithm.name = value;
    } else if (key == "epsilon_ticks") {
      cfg.algorithm.ticks = static_cast<std::uint32_t>(as_uint());
    } else if (key == "rounds") {
      cfg.algorithm.rounds = as_uint();
    } else if (key == "queries_per_round") {
      cfg.algorithm.queries_per_round = as_uint();
    } else if (key == "seed") {
      cfg.algorithm.seed = as_uint();
    } else if (key == "reps") {
      cfg.reps = as_uint();
    } else if (key == "round_budget") {
      cfg.round_budget = as_uint();
    } else if (key == "timing") {
      cfg.timing = value == "true" || value == "1";
    } else {
      throw InputError("config line " + std::to_string(lineno) + ": unknown key `" + key + "`");
    }
  }
  validate(cfg);
  return cfg;
}

struct ResultRow {
  std::size_t rep = 0;
  std::string graph;
  std::size_t n = 0;
  std::uint64_t graph_seed = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint32_t ticks = 0;
  std::size_t size = 0;
  std::size_t opt = 0;
  std::optional<double> ratio;
  std::size_t demand_count = 0;
  std::size_t or_count = 0;
  std::size_t rounds_used = 0;
  std::size_t max_per_round = 0;
  // The algorithm's proven guarantee re-checked against OPT.
  bool bound_ok = true;
  // Non-empty when the run stopped on a budget or protocol violation.
  std::string error;
  std::optional<double> wall_ms;
  std::optional<AdversaryRun> adversary;
};

namespace detail {

inline bool proven_bound(const std::string& name, std::uint32_t t, std::size_t size, std::size_t opt) {
  if (name == "greedy") return 2 * size >= opt;
  if (name == "auction") return static_cast<std::uint64_t>(size) * t >= static_cast<std::uint64_t>(opt) * (t - 1);
  if (name == "exact") return size == opt;
  return true;
}

}  // namespace detail

// One row per repetition. Repetition k uses graph seed graph.seed + k and
// algorithm seed algorithm.seed + k.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                             std::vector<QueryTranscript>* transcripts = nullptr) {
  validate(cfg);
  std::vector<ResultRow> rows;
  for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
    ResultRow row;
    row.rep = rep;
    row.n = cfg.graph.n;
    row.algorithm = cfg.algorithm.name;
    row.seed = cfg.algorithm.seed + rep;
    row.ticks = cfg.algorithm.ticks;
    const auto started = std::chrono::steady_clock::now();

    if (cfg.algorithm.name.starts_with("adversary_")) {
      row.graph = "adversary";
      const auto driver = cfg.algorithm.name == "adversary_greedy" ? AdversaryDriver::batched_greedy
                                                                   : AdversaryDriver::random_stream;
      try {
        auto run = run_adversary(cfg.graph.n, cfg.algorithm.rounds, cfg.algorithm.queries_per_round, driver, row.seed);
        row.size = run.algorithm_matching;
        row.opt = run.gap.dense_opt;
        row.or_count = run.transcript.or_count;
        row.rounds_used = run.transcript.rounds.size();
        row.max_per_round = run.transcript.max_queries_per_round();
        row.bound_ok = run.indistinguishable(cfg.graph.n);
        if (transcripts) transcripts->push_back(run.transcript);
        row.adversary = std::move(run);
      } catch (const std::exception& ex) {
        row.error = ex.what();
        row.bound_ok = false;
      }
    } else {
      auto spec = cfg.graph;
      spec.seed = cfg.graph.seed + rep;
      row.graph = to_string(spec.kind);
      row.graph_seed = spec.seed;
      const auto g = generate(spec);
      row.opt = max_matching_reference(g).size();
      Oracle o(g);
      o.set_round_budget(cfg.round_budget);
      const auto& name = cfg.algorithm.name;
      try {
        Matching m;
        if (name == "greedy") {
          m = greedy_online(o);
        } else if (name == "ranking") {
          m = ranking_greedy(o, row.seed);
        } else if (name == "auction") {
          m = ascending_auction(o, cfg.algorithm.ticks);
        } else if (name == "exact") {
          m = max_matching_exact(o);
        } else {
          const auto rounds = cfg.algorithm.rounds > 0 ? cfg.algorithm.rounds
                                                       : default_parallel_rounds(spec.n, cfg.algorithm.ticks);
          m = parallel_matching(o, cfg.algorithm.ticks, rounds, row.seed);
        }
        row.size = m.size();
        row.bound_ok = validate_matching(g, m) && detail::proven_bound(name, cfg.algorithm.ticks, row.size, row.opt);
      } catch (const BudgetError& ex) {
        row.error = ex.what();
        row.bound_ok = false;
      } catch (const ProtocolError& ex) {
        row.error = ex.what();
        row.bound_ok = false;
      }
      const auto& t = o.transcript();
      row.demand_count = t.demand_count;
      row.or_count = t.or_count;
      row.rounds_used = t.rounds.size();
      row.max_per_round = t.max_queries_per_round();
      if (transcripts) transcripts->push_back(t);
    }
    if (row.opt > 0) row.ratio = static_cast<double>(row.size) / static_cast<double>(row.opt);
    if (cfg.timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string fixed6(std::optional<double> x) {
  if (!x) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *x);
  return buf;
}

}  // namespace detail

inline void write_csv_header(std::ostream& out, bool timing) {
  out << "rep,graph,n,graph_seed,algorithm,seed,epsilon_ticks,size,opt,ratio,demand_count,or_count,"
         "rounds_used,max_per_round,bound_ok,sparse_opt,dense_opt,gap_ratio,yes_cover_total,constraints_ok,error";
  if (timing) out << ",wall_ms";
  out << '\n';
}

inline void write_csv_row(std::ostream& out, const ResultRow& r, bool timing) {
  std::string error = r.error;
  for (auto& c : error) {
    if (c == ',' || c == '\n' || c == '"') c = ';';
  }
  out << r.rep << ',' << r.graph << ',' << r.n << ',' << r.graph_seed << ',' << r.algorithm << ',' << r.seed << ','
      << r.ticks << ',' << r.size << ',' << r.opt << ',' << detail::fixed6(r.ratio) << ',' << r.demand_count << ','
      << r.or_count << ',' << r.rounds_used << ',' << r.max_per_round << ',' << (r.bound_ok ? 1 : 0) << ',';
  if (r.adversary) {
    const auto& a = *r.adversary;
    out << a.gap.sparse_opt << ',' << a.gap.dense_opt << ',' << detail::fixed6(a.gap.ratio) << ','
        << a.yes_cover_total << ',' << (a.constraints_ok ? 1 : 0);
  } else {
    out << ",,,,";
  }
  out << ',' << error;
  if (timing) out << ',' << detail::fixed6(r.wall_ms);
  out << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
  write_csv_header(out, timing);
  for (const auto& r : rows) write_csv_row(out, r, timing);
}

inline nlohmann::json to_json(const ResultRow& r) {
  auto opt_num = [](std::optional<double> x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
  nlohmann::json j = {{"rep", r.rep},
                      {"graph", r.graph},
                      {"n", r.n},
                      {"graph_seed", r.graph_seed},
                      {"algorithm", r.algorithm},
                      {"seed", r.seed},
                      {"epsilon_ticks", r.ticks},
                      {"size", r.size},
                      {"opt", r.opt},
                      {"ratio", opt_num(r.ratio)},
                      {"demand_count", r.demand_count},
                      {"or_count", r.or_count},
                      {"rounds_used", r.rounds_used},
                      {"max_per_round", r.max_per_round},
                      {"bound_ok", r.bound_ok},
                      {"error", r.error}};
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  if (r.adversary) {
    const auto& a = *r.adversary;
    j["gap"] = to_json(a.gap);
    j["yes_cover_total"] = a.yes_cover_total;
    j["constraints_ok"] = a.constraints_ok;
    j["dense_min_degree"] = a.dense_min_degree;
    j["sparse_consistent"] = a.sparse_consistent;
    j["dense_consistent"] = a.dense_consistent;
    auto& reports = j["rounds"] = nlohmann::json::array();
    for (const auto& rep : a.reports) reports.push_back(to_json(rep));
  }
  return j;
}

inline void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) out << to_json(r).dump() << '\n';
}

}  // namespace dqlab
