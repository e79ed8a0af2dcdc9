#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "snl/matrix_design.hpp"
#include "snl/problem.hpp"
#include "snl/prox.hpp"
#include "snl/trace.hpp"

namespace snl {

enum class ExecutionMode { Serial, Decentralized };
// Which local copy sensor i reports as its estimate: the output of its
// PSD-projection prox (default) or of its g_i prox.
enum class EstimateSource { DeltaBlock, GBlock };

struct EarlyStop {
  int patience = 100;
};

struct SolverOptions {
  double gamma = 0.999;
  double alpha = 10.0;
  int max_iter = 3000;
  std::optional<EarlyStop> early_stop;
  ExecutionMode mode = ExecutionMode::Serial;
  std::uint64_t seed = 0;
  InnerSchedule inner;
  // Stop once gamma ||W x||_F / max(1, ||x||_F) falls to this value.
  double fixed_point_tol = 1e-6;
  EstimateSource estimate = EstimateSource::DeltaBlock;

  void validate() const;
};

// Lifted iterates of the 2n functions f_1..f_n = g_1..g_n and
// f_{n+1}..f_{2n} = PSD indicators of S^1..S^n.
struct SolverState {
  std::vector<LiftedPoint> v;
  std::vector<LiftedPoint> x;
  int iteration = 0;
  std::vector<double> objective_history;
  std::vector<GProxData> gprox;
  long inner_iterations = 0;
  int inner_warnings = 0;
  double fixed_point_residual = kNotAvailable;
  double certificate_residual = kNotAvailable;

  int sensors() const { return static_cast<int>(gprox.size()); }
};

// v = 0.
SolverState init_cold(const ProblemInstance& instance, const MatrixParams& params,
                      double rho = kDefaultInnerRho);
// v_i = (X~, X~ X~^T) for the g block and -(X~, X~ X~^T) for the PSD block.
SolverState warm_start_v(const ProblemInstance& instance, const MatrixParams& params,
                         const Matrix& x_tilde, double rho = kDefaultInnerRho);
// truth + iid N(0, sd^2) per component.
Matrix perturb_truth(const ProblemInstance& instance, double sd, std::uint64_t seed);

// One pass of the matrix-parametrized splitting:
//   x_i = prox_{alpha f_i}(v_i + sum_{j<i} L_ij x_j),  i = 1..2n
//   v   = v - gamma W x
void iterate(SolverState& state, const ProblemInstance& instance, const MatrixParams& params,
             const SolverOptions& options);

SolverTrace run(const ProblemInstance& instance, const MatrixParams& params,
                const SolverOptions& options, SolverState initial);

// Worker-per-sensor execution over a simulated network restricted to
// G(build_adjacency(instance)). Requires 2-Block params. Each iteration uses
// two exchange rounds: g-block outputs (for L x), then PSD-block outputs (for
// W x). Produces the same iterates as run().
SolverTrace run_decentralized(const ProblemInstance& instance, const MatrixParams& params,
                              const SolverOptions& options, SolverState initial);

// Row i of the chosen local copy held by sensor i.
Matrix sensor_estimates(const SolverState& state,
                        EstimateSource source = EstimateSource::DeltaBlock);

// Fires once the last `patience` observations all exceed the minimum seen
// before them. A new minimum or a tie resets the count.
class EarlyStopMonitor {
 public:
  explicit EarlyStopMonitor(std::optional<int> patience) : patience_(patience) {}

  // Returns true when the run should stop after this observation.
  bool observe(double value);
  int best_index() const { return best_index_; }
  double best_value() const { return best_value_; }
  int observed() const { return count_; }

 private:
  std::optional<int> patience_;
  double best_value_ = 0.0;
  int best_index_ = -1;
  int since_best_ = 0;
  int count_ = 0;
};

// Lifted variables that sensor i keeps between iterations (prox caches
// excluded).
int splitting_persistent_lifted_per_sensor();

}  // namespace snl
