#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snl/admm.hpp"
#include "snl/problem.hpp"
#include "snl/splitting.hpp"
#include "snl/stats.hpp"

namespace snl {

inline constexpr int kExperimentSchemaVersion = 1;

struct ExperimentConfig {
  std::string name = "experiment";
  int trials = 50;
  std::uint64_t base_seed = 0;
  InstanceParams instance;
  std::vector<std::string> methods{"splitting", "admm"};
  SolverOptions splitting;
  AdmmOptions admm;
  bool cold = true;
  // Warm start from truth + N(0, sd^2) noise; no warm runs when empty.
  std::optional<double> warm_start_sd;
  // Early-stop patience for the early-termination study; empty means never.
  std::optional<int> patience = 100;
  std::string output_dir = "results";
  int threads = 1;

  // Throws Error(InvalidArgument) for trials < 1, unknown methods, etc.
  void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

// SNL_OUTPUT_DIR overrides config.output_dir when set and nonempty.
std::filesystem::path output_directory(const ExperimentConfig& config);

std::uint64_t trial_seed(const ExperimentConfig& config, int trial);

struct TrialFailure {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string message;
};

// Relative error curves of one (method, start) pair across trials.
struct CurveSet {
  std::string method;
  std::string start;  // "cold" or "warm"
  std::vector<int> trials;
  // curves[t][k] is the relative error after iteration k + 1. Runs that stop
  // early at a fixed point are extended with their final value.
  std::vector<std::vector<double>> curves;
  std::vector<Spread> per_iteration;
};

struct ComparisonSummary {
  std::vector<CurveSet> sets;
  std::vector<TrialFailure> failures;

  const CurveSet* find(const std::string& method, const std::string& start) const;
};

struct ComparisonRow {
  std::string method;
  std::string start;
  int iteration = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  int trials = 0;
};

ComparisonSummary run_comparison(const ExperimentConfig& config);
std::string comparison_to_csv(const ComparisonSummary& summary);
std::vector<ComparisonRow> comparison_from_csv(const std::string& csv);

struct EarlyStopTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  int stop_iteration = 0;  // iterations run by the early-stop solve
  int best_iteration = 0;
  int converged_iterations = 0;
  std::string converged_termination;
  double early_mean_distance = 0.0;
  double converged_mean_distance = 0.0;
  double early_centrality = 0.0;
  double converged_centrality = 0.0;
  double truth_centrality = 0.0;
  bool early_wins() const { return early_mean_distance < converged_mean_distance; }
};

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  int count = 0;
};

struct EarlyStopSummary {
  std::vector<EarlyStopTrial> trials;
  std::vector<TrialFailure> failures;
  int wins = 0;
  Interval win_fraction;
  double median_early_mean_distance = 0.0;
  double median_converged_mean_distance = 0.0;
  double median_early_centrality = 0.0;
  double median_converged_centrality = 0.0;
  // converged - early mean distance, positive when early stopping wins.
  std::vector<HistogramBin> difference_histogram;
};

EarlyStopSummary run_early_termination_study(const ExperimentConfig& config);
std::string early_stop_to_csv(const EarlyStopSummary& summary);
std::vector<EarlyStopTrial> early_stop_from_csv(const std::string& csv);
std::string early_stop_summary_json(const EarlyStopSummary& summary);

struct CentralitySummary {
  std::vector<int> trials;
  std::vector<TrialFailure> failures;
  std::vector<double> mean_centrality;  // per iteration
  double truth_centrality = 0.0;        // mean over trials
};

CentralitySummary run_centrality_trace(const ExperimentConfig& config);
std::string centrality_to_csv(const CentralitySummary& summary);

// Writes CSV, SVG and summary files into `dir`; returns the written paths.
std::vector<std::filesystem::path> write_comparison(const ComparisonSummary& summary,
                                                    const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_early_stop(const EarlyStopSummary& summary,
                                                    const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_centrality(const CentralitySummary& summary,
                                                    const std::filesystem::path& dir);

}  // namespace snl
