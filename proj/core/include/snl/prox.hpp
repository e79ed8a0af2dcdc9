#pragma once

#include <cstdint>
#include <vector>

#include "snl/problem.hpp"

namespace snl {

inline constexpr double kDefaultInnerRho = 10.0;

Vector soft_threshold(const Vector& x, double tau);

// Euclidean projection of a symmetric matrix onto the PSD cone. The input
// is symmetrized first. Throws Error(Numeric) if the eigensolver fails.
Matrix psd_project(const Matrix& s);

// Row/column order of the principal submatrix S^i:
// the d identity coordinates, then sensor i, then N_i in stored order.
std::vector<int> submatrix_sensors(const ProblemInstance& instance, int i);
Matrix principal_submatrix(const ProblemInstance& instance, int i, const LiftedPoint& p);
// max(0, -lambda_min(S^i(p))).
double psd_violation(const ProblemInstance& instance, int i, const LiftedPoint& p);

struct DeltaProxResult {
  LiftedPoint point;
  // max(0, -lambda_min) of S^i rebuilt from the output with the identity
  // block re-imposed.
  double reimposed_violation = 0.0;
};

// Projection for the indicator of S^i(X, Y) >= 0: project the assembled S^i
// (identity block included) onto the PSD cone and write the X and Y entries
// back; the identity block of the projection is discarded. The solvers pass
// measure = false to skip the extra eigenvalue solve for reimposed_violation.
DeltaProxResult delta_prox(const ProblemInstance& instance, int i, const LiftedPoint& pk,
                           bool measure = true);

// Cached vectorization of the g_i prox
//   argmin  alpha g_i(X, Y) + 1/2 ||Y - Y^k||_F^2 + ||X - X^k||_F^2.
// With v = (Y_ii, Y_j1j1, Y_ij1, ..., Y_jqjq, Y_ijq, X_i.) the problem
// becomes  min_w alpha ||c^k - K w||_1 + 1/2 ||D w||^2  for the step
// w = v - v^k and c^k = c - K v^k, solved by ADMM on y = c^k - K w.
struct GProxData {
  int sensor = 0;
  int dim = 0;
  std::vector<int> neighbors;  // N_i, fixes the layout of v
  Matrix K;                    // (|N_i| + |M_i|) x (1 + 2|N_i| + d)
  Vector D;                    // diagonal of D_i
  Vector c;
  double rho = kDefaultInnerRho;
  Eigen::LLT<Matrix> chol;  // of rho K^T K + D^T D
  Matrix solve_map;         // rho (rho K^T K + D^T D)^{-1} K^T
  Matrix k_solve;           // K * solve_map
  Matrix k_gram;            // K K^T
  Vector lambda_ws;         // scaled dual, warm-started across calls
  Vector y_ws;

  int variables() const { return static_cast<int>(K.cols()); }
  int rows() const { return static_cast<int>(K.rows()); }

  // v = vvec_i(p) and its inverse on a copy.
  Vector vectorize(const LiftedPoint& p) const;
  void scatter(const Vector& v, LiftedPoint& p) const;
};

// Total Cholesky factorizations performed by build_g_prox_data in this
// process; lets tests assert the factor is reused.
std::uint64_t g_prox_factorization_count() noexcept;

GProxData build_g_prox_data(const ProblemInstance& instance, int i, double rho = kDefaultInnerRho);

inline constexpr int kDefaultMaxInner = 10'000;

struct GProxResult {
  LiftedPoint point;
  int iterations = 0;
  // False when the iteration budget ran out; `point` is then the last iterate.
  bool converged = true;
};

// Inner ADMM:
//   w      = (rho K^T K + D^T D)^{-1} rho K^T (lambda + c^k - y)
//   y      = soft_{alpha/rho}(c^k - K w + lambda)
//   lambda = lambda + c^k - K w - y
// stopping once the lambda step and the dual residual rho ||K^T dy|| are
// both within tol.
GProxResult g_prox(GProxData& data, const LiftedPoint& pk, double alpha, double tol,
                   int max_inner = kDefaultMaxInner);

// Inner tolerance tightened geometrically with the outer iteration count:
// max(tol_min, tol0 * beta^floor(k / every)).
struct InnerSchedule {
  double tol0 = 1e-4;
  double beta = 0.5;
  int every = 50;
  double tol_min = 1e-8;
  int max_inner = kDefaultMaxInner;

  double tolerance(int outer_iteration) const;
};

}  // namespace snl
