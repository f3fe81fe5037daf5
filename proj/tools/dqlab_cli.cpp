// Command-line front end: run experiments, play the adversary, verify
// certificates and sweep query counts.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqlab/dqlab.hpp"

namespace {

using namespace dqlab;

// --out if given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open `" + path + "` for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open `" + path + "`");
  return in;
}

void emit_rows(const std::vector<ResultRow>& rows, const std::string& format, bool timing, std::ostream& out) {
  if (format == "jsonl") {
    write_jsonl(out, rows);
  } else {
    write_csv(out, rows, timing);
  }
}

struct CommonFlags {
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Write results to this file instead of stdout");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
}

int cmd_run(const std::string& config_path, const std::string& transcript_path, const CommonFlags& f,
            ExperimentConfig overrides, const CLI::App& cmd) {
  auto in = open_input(config_path);
  auto cfg = parse_config(in);
  if (cmd.count("--n")) cfg.graph.n = overrides.graph.n;
  if (cmd.count("--epsilon-ticks")) cfg.algorithm.ticks = overrides.algorithm.ticks;
  if (cmd.count("--rounds")) cfg.algorithm.rounds = overrides.algorithm.rounds;
  if (cmd.count("--queries-per-round")) cfg.algorithm.queries_per_round = overrides.algorithm.queries_per_round;
  if (cmd.count("--seed")) cfg.algorithm.seed = overrides.algorithm.seed;
  if (cmd.count("--reps")) cfg.reps = overrides.reps;
  if (cmd.count("--timing")) cfg.timing = true;
  validate(cfg);

  std::vector<QueryTranscript> transcripts;
  const auto rows = run_experiment(cfg, transcript_path.empty() ? nullptr : &transcripts);
  Output out(f.out);
  emit_rows(rows, f.format, cfg.timing, out.stream());
  if (!transcript_path.empty()) {
    Output t(transcript_path);
    for (const auto& tr : transcripts) write_jsonl(t.stream(), tr);
  }
  for (const auto& r : rows) {
    if (!r.bound_ok) return 1;
  }
  return 0;
}

int cmd_adversary(std::size_t n, std::size_t rounds, std::size_t q, const std::string& algorithm, std::uint64_t seed,
                  std::size_t reps, const CommonFlags& f) {
  const auto driver = parse_adversary_driver(algorithm);
  make_adversary_config(n, rounds, q);
  Output out(f.out);
  auto& os = out.stream();
  if (f.format == "csv") {
    os << "rep,round,queries,big,small,pre_answered,small_hit_by_big,hitting_set_size,heavy_count,yes_edges,"
          "no_edges,max_no_degree,yes_cover_size,yes_budget,budget_ok,no_degree_ok,yes_cover_ok,cover_valid,"
          "answers_determined\n";
  }
  bool all_ok = true;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const auto run = run_adversary(n, rounds, q, driver, seed + rep);
    const bool ok = run.indistinguishable(n);
    all_ok = all_ok && ok;
    if (f.format == "csv") {
      for (const auto& r : run.reports) {
        os << rep << ',' << r.round << ',' << r.queries << ',' << r.big << ',' << r.small << ',' << r.pre_answered
           << ',' << r.small_hit_by_big << ',' << r.hitting_set_size << ',' << r.heavy_count << ',' << r.yes_edges
           << ',' << r.no_edges << ',' << r.max_no_degree << ',' << r.yes_cover_size << ',' << r.yes_budget << ','
           << r.budget_ok << ',' << r.no_degree_ok << ',' << r.yes_cover_ok << ',' << r.cover_valid << ','
           << r.answers_determined << '\n';
      }
    } else {
      nlohmann::json j = {{"rep", rep},
                          {"n", n},
                          {"rounds", rounds},
                          {"queries_per_round", q},
                          {"algorithm", algorithm},
                          {"seed", seed + rep},
                          {"gap", to_json(run.gap)},
                          {"yes_cover_total", run.yes_cover_total},
                          {"dense_min_degree", run.dense_min_degree},
                          {"sparse_consistent", run.sparse_consistent},
                          {"dense_consistent", run.dense_consistent},
                          {"constraints_ok", run.constraints_ok},
                          {"indistinguishable", ok}};
      auto& arr = j["round_reports"] = nlohmann::json::array();
      for (const auto& r : run.reports) arr.push_back(to_json(r));
      os << j.dump() << '\n';
    }
    std::cerr << "rep " << rep << ": sparse_opt=" << run.gap.sparse_opt << " dense_opt=" << run.gap.dense_opt
              << " gap=" << (run.gap.ratio ? std::to_string(*run.gap.ratio) : std::string("inf"))
              << " yes_cover=" << run.yes_cover_total << " dense_min_degree=" << run.dense_min_degree
              << (ok ? " ok" : " FAILED") << '\n';
  }
  return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& graph_path, const std::string& matching_path, const std::string& cert_path) {
  auto gin = open_input(graph_path);
  const auto g = read_graph(gin);
  auto min = open_input(matching_path);
  const auto m = read_matching(min);
  auto cin = open_input(cert_path);
  const auto cert = read_certificate(cin);
  Oracle o(g);
  const bool ok = verify_maximality_certificate(o, m, cert.block_left, cert.block_right);
  std::cout << (ok ? "valid" : "invalid") << " matching_size=" << m.size() << " demand=" << o.transcript().demand_count
            << " or=" << o.transcript().or_count << '\n';
  return ok ? 0 : 1;
}

int cmd_generate(GeneratorSpec spec, const std::string& out_path) {
  Output out(out_path);
  write_graph(out.stream(), generate(spec));
  return 0;
}

int cmd_certify(const std::string& graph_path, const std::string& matching_out, const std::string& cert_out) {
  auto in = open_input(graph_path);
  const auto g = read_graph(in);
  const auto m = max_matching_reference(g);
  const auto cert = konig_certificate(g, m);
  Output mo(matching_out);
  write_matching(mo.stream(), m);
  Output co(cert_out);
  write_certificate(co.stream(), cert);
  return 0;
}

int cmd_bench(const std::string& algorithm, const std::vector<std::size_t>& sizes, GeneratorSpec graph,
              std::uint32_t ticks, std::size_t reps, std::uint64_t seed, const CommonFlags& f) {
  Output out(f.out);
  std::vector<ResultRow> all;
  for (auto n : sizes) {
    ExperimentConfig cfg;
    cfg.graph = graph;
    cfg.graph.n = n;
    cfg.algorithm.name = algorithm;
    cfg.algorithm.ticks = ticks;
    cfg.algorithm.seed = seed;
    cfg.reps = reps;
    auto rows = run_experiment(cfg);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  emit_rows(all, f.format, false, out.stream());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqlab: matching with demand and OR queries"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string config_path;
  std::string transcript_path;
  ExperimentConfig overrides;
  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("--config", config_path, "key = value experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--transcript", transcript_path, "Write query transcripts (JSONL) here");
  run->add_option("--n", overrides.graph.n, "Override the graph size");
  run->add_option("--epsilon-ticks", overrides.algorithm.ticks, "Override ticks per unit price")
      ->check(CLI::PositiveNumber);
  run->add_option("--rounds", overrides.algorithm.rounds, "Override the round count");
  run->add_option("--queries-per-round", overrides.algorithm.queries_per_round, "Override queries per round");
  run->add_option("--seed", overrides.algorithm.seed, "Override the algorithm seed");
  run->add_option("--reps", overrides.reps, "Override the repetition count")->check(CLI::PositiveNumber);
  run->add_flag("--timing", "Add a wall_ms column");
  add_common(run, run_flags);

  CommonFlags adv_flags;
  std::size_t adv_n = 4096;
  std::size_t adv_r = 2;
  std::size_t adv_q = 64;
  std::string adv_algorithm = "greedy";
  std::uint64_t adv_seed = 0;
  std::size_t adv_reps = 1;
  auto* adv = app.add_subcommand("adversary", "Play the round-limited OR adversary and audit both completions");
  adv->add_option("--n", adv_n, "Vertices per side")->check(CLI::PositiveNumber);
  adv->add_option("--rounds", adv_r, "Rounds r")->check(CLI::PositiveNumber);
  adv->add_option("--queries-per-round", adv_q, "Queries per round q")->check(CLI::PositiveNumber);
  adv->add_option("--algorithm", adv_algorithm, "Query driver")->check(CLI::IsMember({"greedy", "random"}));
  adv->add_option("--seed", adv_seed, "Seed for the random driver");
  adv->add_option("--reps", adv_reps, "Repetitions with seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  add_common(adv, adv_flags);

  std::string graph_path;
  std::string matching_path;
  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Check a maximality certificate (exit 0 valid, 1 invalid, 2 error)");
  verify->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--matching", matching_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--certificate", cert_path)->required()->check(CLI::ExistingFile);

  GeneratorSpec gen;
  std::string gen_kind = "erdos_renyi";
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated graph");
  generate_cmd->add_option("--graph", gen_kind, "Graph family");
  generate_cmd->add_option("--n", gen.n, "Vertices per side")->required();
  generate_cmd->add_option("--p", gen.p, "Edge or noise probability");
  generate_cmd->add_option("--d", gen.d, "Degree for d_regular");
  generate_cmd->add_option("--seed", gen.seed, "Generator seed");
  generate_cmd->add_option("--out", gen_out, "Output file");

  std::string cert_graph;
  std::string cert_matching_out;
  std::string cert_out;
  auto* certify = app.add_subcommand("certify", "Compute a maximum matching and its vertex-cover certificate");
  certify->add_option("--graph", cert_graph)->required()->check(CLI::ExistingFile);
  certify->add_option("--matching-out", cert_matching_out)->required();
  certify->add_option("--certificate-out", cert_out)->required();

  CommonFlags bench_flags;
  std::string bench_algorithm = "auction";
  std::vector<std::size_t> bench_sizes{64, 128, 256};
  std::string bench_kind = "erdos_renyi";
  GeneratorSpec bench_graph;
  bench_graph.p = 0.1;
  std::uint32_t bench_ticks = 8;
  std::size_t bench_reps = 3;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "Sweep n and report query counts");
  bench->add_option("--algorithm", bench_algorithm, "Algorithm")
      ->check(CLI::IsMember({"greedy", "ranking", "auction", "exact", "parallel"}));
  bench->add_option("--n", bench_sizes, "Sizes, comma separated")->delimiter(',');
  bench->add_option("--graph", bench_kind, "Graph family");
  bench->add_option("--p", bench_graph.p, "Edge or noise probability");
  bench->add_option("--d", bench_graph.d, "Degree for d_regular");
  bench->add_option("--epsilon-ticks", bench_ticks, "Ticks per unit price")->check(CLI::PositiveNumber);
  bench->add_option("--reps", bench_reps, "Repetitions per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Base seed for graphs and algorithms");
  add_common(bench, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return 2;
  }

  try {
    if (*run) return cmd_run(config_path, transcript_path, run_flags, overrides, *run);
    if (*adv) return cmd_adversary(adv_n, adv_r, adv_q, adv_algorithm, adv_seed, adv_reps, adv_flags);
    if (*verify) return cmd_verify(graph_path, matching_path, cert_path);
    if (*generate_cmd) {
      gen.kind = parse_graph_kind(gen_kind);
      return cmd_generate(gen, gen_out);
    }
    if (*certify) return cmd_certify(cert_graph, cert_matching_out, cert_out);
    if (*bench) {
      bench_graph.kind = parse_graph_kind(bench_kind);
      bench_graph.seed = bench_seed;
      return cmd_bench(bench_algorithm, bench_sizes, bench_graph, bench_ticks, bench_reps, bench_seed, bench_flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
