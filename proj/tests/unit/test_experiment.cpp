#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "snl/error.hpp"
#include "snl/experiment.hpp"
#include "snl/instance_io.hpp"
#include "snl/stats.hpp"
#include "snl/svg_plot.hpp"

using namespace snl;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.name = "tiny";
  c.trials = 2;
  c.base_seed = 11;
  c.instance.n = 10;
  c.instance.m = 4;
  c.instance.radius = 0.7;
  c.splitting.max_iter = 25;
  c.admm.max_iter = 25;
  c.patience = 5;
  c.warm_start_sd = 0.05;
  return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("snl_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Stats, Quantiles) {
  const std::vector<double> v{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(median(v), 2.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(median({7.0}), 7.0);
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  const auto s = spread({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.iqr(), 2.0);
  EXPECT_THROW(quantile({}, 0.5), Error);
  EXPECT_THROW(quantile(v, 1.5), Error);
}

TEST(Stats, WilsonInterval) {
  auto w = wilson_interval(7, 10);
  EXPECT_DOUBLE_EQ(w.estimate, 0.7);
  EXPECT_NEAR(w.lower, 0.39677814746114537, 1e-12);
  EXPECT_NEAR(w.upper, 0.8922087325936989, 1e-12);
  w = wilson_interval(0, 10);
  EXPECT_NEAR(w.lower, 0.0, 1e-15);
  EXPECT_NEAR(w.upper, 0.2775327998628892, 1e-12);
  w = wilson_interval(60, 100);
  EXPECT_NEAR(w.lower, 0.5020025867910618, 1e-12);
  EXPECT_NEAR(w.upper, 0.6905987135675411, 1e-12);
  EXPECT_THROW(wilson_interval(1, 0), Error);
}

TEST(Svg, RendersSeriesAndSkipsNonFinite) {
  PlotSpec spec;
  spec.title = "t<1>";
  spec.log_y = true;
  spec.series.push_back({"a", {1, 2, 3}, {1.0, NAN, 0.1}, {0.5, 0.5, 0.05}, {2, 2, 0.2}});
  spec.reference_y = 0.3;
  const auto svg = render_svg(spec);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_NE(svg.find("t&lt;1&gt;"), std::string::npos);
}

TEST(Config, JsonRoundTrip) {
  auto c = tiny_config();
  c.patience.reset();
  c.methods = {"admm"};
  c.splitting.mode = ExecutionMode::Decentralized;
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.name, c.name);
  EXPECT_EQ(back.trials, c.trials);
  EXPECT_EQ(back.base_seed, c.base_seed);
  EXPECT_EQ(back.instance.n, c.instance.n);
  EXPECT_EQ(back.methods, c.methods);
  EXPECT_FALSE(back.patience.has_value());
  EXPECT_EQ(back.warm_start_sd, c.warm_start_sd);
  EXPECT_EQ(back.splitting.mode, ExecutionMode::Decentralized);
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json("{\"trials\": 0}"), Error);
  EXPECT_THROW(config_from_json("{\"methods\": [\"newton\"]}"), Error);
  EXPECT_THROW(config_from_json("{\"unknown_key\": 1}"), Error);
  EXPECT_THROW(config_from_json("{\"instance\": {\"n\": 30, \"bogus\": 1}}"), Error);
  EXPECT_THROW(config_from_json("not json"), Error);
  EXPECT_NO_THROW(config_from_json("{}"));
}

TEST(Config, SeedsAndOutputDirectory) {
  auto c = tiny_config();
  EXPECT_EQ(trial_seed(c, 0), 11u);
  EXPECT_EQ(trial_seed(c, 3), 14u);
  ::unsetenv("SNL_OUTPUT_DIR");
  EXPECT_EQ(output_directory(c), std::filesystem::path("results"));
  ::setenv("SNL_OUTPUT_DIR", "/tmp/elsewhere", 1);
  EXPECT_EQ(output_directory(c), std::filesystem::path("/tmp/elsewhere"));
  ::unsetenv("SNL_OUTPUT_DIR");
}

TEST(Comparison, SmokeAndDeterminism) {
  auto c = tiny_config();
  const auto a = run_comparison(c);
  EXPECT_TRUE(a.failures.empty());
  for (const auto* key : {"splitting", "admm"}) {
    for (const auto* start : {"cold", "warm"}) {
      const auto* set = a.find(key, start);
      ASSERT_NE(set, nullptr);
      EXPECT_EQ(set->curves.size(), 2u);
      EXPECT_EQ(set->per_iteration.size(), 25u);
      for (const auto& s : set->per_iteration) EXPECT_LE(s.q25, s.q75);
    }
  }
  c.threads = 2;
  const auto b = run_comparison(c);
  EXPECT_EQ(comparison_to_csv(a), comparison_to_csv(b));
}

TEST(Comparison, CsvRoundTripAndFiles) {
  auto c = tiny_config();
  c.trials = 1;
  c.warm_start_sd.reset();
  const auto summary = run_comparison(c);
  const auto csv = comparison_to_csv(summary);
  EXPECT_EQ(csv.rfind("schema_version,method,start,iteration,median,q25,q75,trials", 0), 0u);
  const auto rows = comparison_from_csv(csv);
  ASSERT_EQ(rows.size(), 2u * 25u);
  EXPECT_EQ(rows.front().iteration, 1);
  EXPECT_EQ(rows.front().trials, 1);
  EXPECT_DOUBLE_EQ(rows.front().median, summary.sets.front().per_iteration.front().median);

  const auto dir = scratch_dir("comparison");
  const auto paths = write_comparison(summary, dir);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p)) << p;
  write_comparison(summary, dir);
  EXPECT_EQ(read_file(dir / "comparison.csv"), csv);
  EXPECT_THROW(comparison_from_csv("garbage\n1,2"), Error);
}

TEST(EarlyStopStudy, SmokeAndRoundTrip) {
  auto c = tiny_config();
  c.splitting.max_iter = 80;
  const auto s = run_early_termination_study(c);
  ASSERT_EQ(s.trials.size(), 2u);
  int wins = 0;
  for (const auto& t : s.trials) {
    EXPECT_LE(t.best_iteration, t.stop_iteration);
    EXPECT_LE(t.stop_iteration, c.splitting.max_iter);
    wins += t.early_wins() ? 1 : 0;
  }
  EXPECT_EQ(s.wins, wins);
  EXPECT_DOUBLE_EQ(s.win_fraction.estimate, wins / 2.0);
  int binned = 0;
  for (const auto& b : s.difference_histogram) binned += b.count;
  EXPECT_EQ(binned, 2);

  const auto back = early_stop_from_csv(early_stop_to_csv(s));
  ASSERT_EQ(back.size(), s.trials.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].seed, s.trials[k].seed);
    EXPECT_EQ(back[k].best_iteration, s.trials[k].best_iteration);
    EXPECT_DOUBLE_EQ(back[k].early_mean_distance, s.trials[k].early_mean_distance);
  }
  const auto dir = scratch_dir("early");
  for (const auto& p : write_early_stop(s, dir)) EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_NE(early_stop_summary_json(s).find("\"wins\""), std::string::npos);
}

TEST(EarlyStopStudy, NoPatienceMeansIdenticalRuns) {
  auto c = tiny_config();
  c.trials = 1;
  c.patience.reset();
  const auto s = run_early_termination_study(c);
  ASSERT_EQ(s.trials.size(), 1u);
  const auto& t = s.trials.front();
  EXPECT_EQ(t.stop_iteration, t.converged_iterations);
  EXPECT_DOUBLE_EQ(t.early_mean_distance, t.converged_mean_distance);
  EXPECT_FALSE(t.early_wins());
}

TEST(Centrality, Smoke) {
  auto c = tiny_config();
  c.trials = 1;
  const auto s = run_centrality_trace(c);
  EXPECT_EQ(s.mean_centrality.size(), 25u);
  EXPECT_GT(s.truth_centrality, 0.0);
  EXPECT_NE(centrality_to_csv(s).find("schema_version"), std::string::npos);
}
