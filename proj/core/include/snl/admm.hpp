#pragma once

#include <optional>
#include <vector>

#include "snl/problem.hpp"
#include "snl/prox.hpp"
#include "snl/splitting.hpp"
#include "snl/trace.hpp"

namespace snl {

struct AdmmOptions {
  double alpha = 150.0;
  int max_iter = 3000;
  std::optional<EarlyStop> early_stop;
  ExecutionMode mode = ExecutionMode::Serial;
  InnerSchedule inner;
  // Stop once ||V^{k+1} - V^k||_F / max(1, ||U||_F) falls to this value.
  double fixed_point_tol = 1e-6;
  EstimateSource estimate = EstimateSource::DeltaBlock;

  void validate() const;
};

// Graph-consensus ADMM over the same 2n functions, on
// G(A') with A' = [[A, A + I], [A + I, A]].
struct AdmmState {
  std::vector<LiftedPoint> U;
  std::vector<LiftedPoint> R;
  std::vector<LiftedPoint> V;
  std::vector<std::vector<int>> K_sets;
  int iteration = 0;
  std::vector<GProxData> gprox;
  long inner_iterations = 0;
  int inner_warnings = 0;
  double fixed_point_residual = kNotAvailable;

  int sensors() const { return static_cast<int>(gprox.size()); }
};

Matrix build_gprime(const Matrix& adjacency);
// Neighbor sets of every node of G(A'), sorted.
std::vector<std::vector<int>> build_k_sets(const Matrix& gprime);

AdmmState init_admm_cold(const ProblemInstance& instance, double rho = kDefaultInnerRho);
// V = R = U = (X~, X~ X~^T) at every node.
AdmmState warm_start_admm(const ProblemInstance& instance, const Matrix& x_tilde,
                          double rho = kDefaultInnerRho);

//   U_i = prox_{(alpha/|K_i|) f_i}(V_i)
//   R_i = mean_{j in K_i} U_j
//   V_i = V_i + R_i^{new} - R_i^{old}/2 - U_i^{old}/2
void admm_iterate(AdmmState& state, const ProblemInstance& instance, const AdmmOptions& options);

SolverTrace run_admm(const ProblemInstance& instance, const AdmmOptions& options,
                     AdmmState initial);

Matrix admm_sensor_estimates(const AdmmState& state,
                             EstimateSource source = EstimateSource::DeltaBlock);

int admm_persistent_lifted_per_sensor();

}  // namespace snl
