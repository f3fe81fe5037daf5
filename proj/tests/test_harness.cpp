#include <sstream>

#include <gtest/gtest.h>

#include "dqlab/harness/experiment.hpp"
#include "test_support.hpp"

namespace dqlab {
namespace {

TEST(Generate, Examples) {
  EXPECT_EQ(generate({GraphKind::empty, 64, 0.0, 0, 1}).edge_count(), 0U);
  EXPECT_EQ(generate({GraphKind::complete, 64, 0.0, 0, 1}).edge_count(), 64U * 64U);
  const auto planted = generate({GraphKind::planted_perfect, 64, 0.1, 0, 1});
  EXPECT_EQ(testing::kuhn_max_matching(planted), 64U);
  const auto tri = generate({GraphKind::upper_triangular, 16, 0.0, 0, 0});
  EXPECT_EQ(tri.edge_count(), 16U * 17U / 2U);
  EXPECT_EQ(testing::kuhn_max_matching(tri), 16U);
}

TEST(Generate, DeterministicInSeed) {
  const GeneratorSpec a{GraphKind::erdos_renyi, 40, 0.2, 0, 9};
  auto b = a;
  EXPECT_EQ(generate(a), generate(a));
  b.seed = 10;
  EXPECT_NE(generate(a), generate(b));
}

TEST(Generate, DRegularDegrees) {
  const auto g = generate({GraphKind::d_regular, 50, 0.0, 7, 3});
  for (Vertex v = 0; v < 50; ++v) EXPECT_EQ(g.degree(v), 7U);
  for (auto d : g.right_degrees()) EXPECT_EQ(d, 7U);
}

TEST(Generate, InvalidParameters) {
  EXPECT_THROW(generate({GraphKind::erdos_renyi, 10, 1.5, 0, 0}), ParameterError);
  EXPECT_THROW(generate({GraphKind::d_regular, 10, 0.0, 11, 0}), ParameterError);
  EXPECT_THROW(parse_graph_kind("petersen"), InputError);
}

ExperimentConfig config_for(GraphKind kind, std::size_t n, const std::string& algorithm) {
  ExperimentConfig cfg;
  cfg.graph.kind = kind;
  cfg.graph.n = n;
  cfg.algorithm.name = algorithm;
  return cfg;
}

TEST(RunExperiment, AuctionOnEmptyGraph) {
  auto cfg = config_for(GraphKind::empty, 64, "auction");
  cfg.reps = 3;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 3U);
  for (const auto& r : rows) {
    EXPECT_EQ(r.size, 0U);
    EXPECT_EQ(r.opt, 0U);
    // Each left vertex asks once, gets no answer, and drops out.
    EXPECT_EQ(r.demand_count, 64U);
    EXPECT_FALSE(r.ratio);
    EXPECT_TRUE(r.bound_ok);
  }
}

TEST(RunExperiment, ExactOnCompleteGraph) {
  const auto rows = run_experiment(config_for(GraphKind::complete, 32, "exact"));
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0].size, 32U);
  EXPECT_TRUE(rows[0].bound_ok);
  EXPECT_LE(static_cast<double>(rows[0].demand_count), 5 * std::pow(32.0, 1.5) + 320);
}

TEST(RunExperiment, TranscriptsReplay) {
  for (const auto& name : {"greedy", "ranking", "auction", "exact", "parallel"}) {
    auto cfg = config_for(GraphKind::erdos_renyi, 24, name);
    cfg.graph.p = 0.2;
    cfg.reps = 2;
    cfg.algorithm.ticks = 3;
    std::vector<QueryTranscript> ts;
    const auto rows = run_experiment(cfg, &ts);
    ASSERT_EQ(ts.size(), 2U);
    for (std::size_t k = 0; k < 2; ++k) {
      auto spec = cfg.graph;
      spec.seed += k;
      EXPECT_TRUE(replay_transcript(ts[k], generate(spec))) << name;
      EXPECT_TRUE(rows[k].bound_ok) << name;
    }
  }
}

TEST(RunExperiment, AdversaryRowCarriesGap) {
  auto cfg = config_for(GraphKind::empty, 1024, "adversary_random");
  cfg.algorithm.rounds = 2;
  cfg.algorithm.queries_per_round = 16;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 1U);
  ASSERT_TRUE(rows[0].adversary);
  EXPECT_EQ(rows[0].opt, 1024U);
  EXPECT_TRUE(rows[0].bound_ok);
  std::ostringstream csv;
  write_csv(csv, rows, false);
  EXPECT_NE(csv.str().find(",1024,"), std::string::npos);
  const auto j = to_json(rows[0]);
  EXPECT_EQ(j["gap"]["dense_opt"], 1024);
  EXPECT_EQ(j["rounds"].size(), 2U);
}

TEST(RunExperiment, CsvIsReproducible) {
  auto cfg = config_for(GraphKind::planted_perfect, 48, "parallel");
  cfg.graph.p = 0.05;
  cfg.algorithm.ticks = 4;
  cfg.reps = 3;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_experiment(cfg), false);
  write_csv(b, run_experiment(cfg), false);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("rep,graph,n,", 0), 0U);
}

TEST(RunExperiment, BudgetViolationIsFlagged) {
  auto cfg = config_for(GraphKind::complete, 16, "auction");
  cfg.round_budget = 5;
  const auto rows = run_experiment(cfg);
  EXPECT_FALSE(rows[0].bound_ok);
  EXPECT_NE(rows[0].error.find("budget"), std::string::npos);
  EXPECT_EQ(rows[0].demand_count, 5U);
}

TEST(ParseConfig, ReadsKeys) {
  std::istringstream in(
      "# sample\n"
      "graph = planted_perfect\n"
      "n = 128\n"
      "p = 0.05\n"
      "algorithm = auction\n"
      "epsilon_ticks = 8\n"
      "reps = 4   # trailing comment\n");
  const auto cfg = parse_config(in);
  EXPECT_EQ(cfg.graph.kind, GraphKind::planted_perfect);
  EXPECT_EQ(cfg.graph.n, 128U);
  EXPECT_DOUBLE_EQ(cfg.graph.p, 0.05);
  EXPECT_EQ(cfg.algorithm.ticks, 8U);
  EXPECT_EQ(cfg.reps, 4U);
}

TEST(ParseConfig, Errors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
  };
  EXPECT_THROW(parse("algorithm = simplex\n"), InputError);
  EXPECT_THROW(parse("colour = blue\n"), InputError);
  EXPECT_THROW(parse("n = -3\n"), InputError);
  EXPECT_THROW(parse("n 3\n"), InputError);
  EXPECT_THROW(parse("algorithm = adversary_greedy\nn = 4096\n"), InputError);
  EXPECT_THROW(parse("epsilon_ticks = 0\n"), InputError);
}

}  // namespace
}  // namespace dqlab
