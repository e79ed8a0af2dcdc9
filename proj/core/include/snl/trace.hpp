#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "snl/problem.hpp"

namespace snl {

inline constexpr double kNotAvailable = std::numeric_limits<double>::quiet_NaN();

// One row of a solver trace. rel_error and mean_distance are NaN when the
// instance has no ground truth, centrality is NaN without anchors.
struct MetricRecord {
  int iteration = 0;
  double objective = 0.0;
  double rel_error = kNotAvailable;
  double centrality = kNotAvailable;
  double mean_distance = kNotAvailable;
  // max_i max(0, -lambda_min(S^i)) over the g-block outputs.
  double psd_residual = 0.0;
  // max_i ||x_i - xbar||_F / ||xbar||_F over all lifted copies.
  double consensus_residual = 0.0;
  // Method-specific fixed-point residual used by the stopping rule.
  double fixed_point_residual = 0.0;
  std::size_t messages = 0;
  std::size_t bytes = 0;
};

enum class Termination { MaxIterations, EarlyStop, FixedPoint };
std::string to_string(Termination t);

struct SolverTrace {
  std::string method;
  std::vector<MetricRecord> records;
  Termination termination = Termination::MaxIterations;
  int iterations = 0;
  Matrix final_estimate;
  // Early-stop argmin estimate when the monitor fired, else final_estimate.
  Matrix best_estimate;
  int best_iteration = 0;
  double final_objective = 0.0;
  // ||sum_i y_i|| / ||xbar|| for y = v + (L - I) x (splitting only).
  double certificate_residual = kNotAvailable;
  double consensus_residual = kNotAvailable;
  std::size_t messages = 0;
  std::size_t bytes = 0;
  std::size_t rounds = 0;
  long inner_iterations = 0;
  int inner_warnings = 0;
  double alpha = 0.0;
  // For ADMM: alpha_splitting-equivalent, alpha * 2n / sum_i |K_i|.
  double equivalent_alpha = kNotAvailable;
};

// Metrics of per-sensor estimates. `estimates[i]` is the lifted copy held at
// sensor i; X_hat row i is taken from it and g_i is evaluated on it.
// `copies` are all lifted copies whose agreement is measured; `g_outputs`
// are the outputs of the g_i proxes (for the PSD violation).
MetricRecord evaluate_metrics(const ProblemInstance& instance,
                              const std::vector<const LiftedPoint*>& estimates,
                              const std::vector<const LiftedPoint*>& copies,
                              const std::vector<const LiftedPoint*>& g_outputs);

Matrix gather_estimates(const std::vector<const LiftedPoint*>& estimates);

// Columns: iteration, objective, rel_error, mean_distance, centrality,
// psd_residual, consensus_residual, messages, bytes.
std::string trace_to_csv(const SolverTrace& trace);
std::vector<MetricRecord> trace_from_csv(const std::string& csv);

}  // namespace snl
