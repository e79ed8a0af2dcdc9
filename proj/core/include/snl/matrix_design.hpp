#pragma once

#include <string>
#include <vector>

#include "snl/types.hpp"

namespace snl {

// Matrix parameters of the splitting method. Z and W are 2n x 2n symmetric,
// L is strictly lower triangular with Z = 2I - L - L^T. For the 2-Block
// construction Z = W = 2 [[I, -B], [-B, I]] and `block` holds B.
struct MatrixParams {
  Matrix Z;
  Matrix W;
  Matrix L;
  Matrix block;
  int block_size = 0;

  int size() const { return static_cast<int>(Z.rows()); }
};

// Builds MatrixParams from a symmetric doubly stochastic block B.
MatrixParams two_block_from_block(const Matrix& block);

// Z = W = 2 [[I, -SK(A + I)], [-SK(A + I), I]].
// Throws Error(Disconnected) if G(A) is disconnected, Error(InvalidArgument)
// if A is not a symmetric 0/1 matrix with zero diagonal.
MatrixParams two_block_params(const Matrix& adjacency, double tol = 1e-10);

// Same construction with the block computed by the decentralized
// Sinkhorn-Knopp exchange.
MatrixParams two_block_params_decentralized(const Matrix& adjacency, double tol = 1e-10);

// Strictly lower triangular L with 2I - L - L^T = Z. Throws
// Error(InvalidArgument) if Z is not symmetric or diag(Z) != 2.
Matrix lower_factor(const Matrix& z, double tol = 1e-12);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

// Check names: "symmetric", "z_minus_w_psd", "w_ones_zero",
// "nullspace_dim_one", "diag_z_two", "ones_z_ones_zero",
// "lower_reconstruction", "two_block_structure", "two_block_adherence".
// Residuals are measured values; a check passes when its residual is within
// tol (for "nullspace_dim_one" the residual is lambda_2(W), which must exceed
// tol while lambda_1(W) stays within tol of zero).
ValidationReport validate_params(const MatrixParams& params, const Matrix& adjacency,
                                 double tol = 1e-8);

}  // namespace snl
