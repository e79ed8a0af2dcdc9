#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "snl/matrix_design.hpp"
#include "snl/splitting.hpp"
#include "snl/trace.hpp"

namespace snl::detail {

// Nonzero entries of each row of a dense matrix, in column order. Every
// weighted sum in the solvers walks these lists so serial and decentralized
// runs accumulate in the same order.
using SparseRows = std::vector<std::vector<std::pair<int, double>>>;

inline SparseRows sparse_rows(const Matrix& m) {
  SparseRows rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) rows[i].emplace_back(static_cast<int>(j), m(i, j));
  return rows;
}

struct StepTraffic {
  std::size_t messages = 0;
  std::size_t bytes = 0;
};

struct DriveHooks {
  std::function<StepTraffic()> step;
  // Metrics of the state after the latest step.
  std::function<MetricRecord()> metrics;
  std::function<Matrix()> estimate;
  std::function<int()> iteration;
  std::function<double()> fixed_point_residual;
};

struct DriveLimits {
  int max_iter = 0;
  std::optional<EarlyStop> early_stop;
  double fixed_point_tol = 0.0;
};

// Iterates until max_iter, the early-stop monitor fires, or the fixed-point
// residual drops to tolerance; records one MetricRecord per iteration.
SolverTrace drive(const char* method, const DriveLimits& limits, const DriveHooks& hooks,
                  std::vector<double>& objective_history);

}  // namespace snl::detail
