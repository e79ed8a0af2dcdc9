#pragma once

#include <map>
#include <vector>

#include "snl/types.hpp"

namespace snl {

struct SinkhornOptions {
  double tol = 1e-10;
  int max_iter = 10'000;
};

struct SinkhornResult {
  Matrix matrix;
  int iterations = 0;
  // Max |row sum - 1| after the final column scaling.
  double deviation = 0.0;
  // ||B - B^T||_inf before the explicit symmetrization (symmetric input only).
  double asymmetry = 0.0;
};

// Limit scale applied to a single row or column before the input is declared
// to lack support.
inline constexpr double kMaxScaling = 1e13;

// Alternating row/column normalization to a doubly stochastic matrix with the
// sparsity of A. Symmetric inputs produce an exactly symmetric output.
// Throws Error(NoSupport) on an all-zero row or column, a cumulative scaling
// factor above kMaxScaling, or an exhausted iteration budget.
SinkhornResult sinkhorn_knopp_detailed(const Matrix& a, const SinkhornOptions& options = {});
Matrix sinkhorn_knopp(const Matrix& a, double tol = 1e-10, int max_iter = 10'000);

// Decentralized run: node i holds the weights of its incident edges (self
// loop included) and exchanges them with graph neighbors only.
struct DecentralizedSinkhornResult {
  // weights[i][j] is node i's weight on edge (i, j), i.e. row i of SK(A).
  std::vector<std::map<int, double>> weights;
  // Exchange rounds performed. One normalization sweep is two exchanges:
  // row scaling then send, column scaling then send back.
  int rounds = 0;
  int sweeps = 0;
  double deviation = 0.0;
  // Weight transmissions per exchange round; equals the number of directed
  // edges 2|E| (self loops are local).
  std::size_t messages_per_round = 0;
  std::size_t total_messages = 0;

  Matrix assemble() const;
};

// `a_with_loops` is a symmetric 0/1 adjacency with ones on the diagonal.
// Each sweep ends with every node checking its own row-sum deviation; the
// run stops once all of them are within tol (a one-bit all-reduce, not
// counted as weight traffic). Throws Error(NotConverged) after `max_rounds`
// exchanges and Error(Disconnected) when the graph is disconnected.
DecentralizedSinkhornResult sinkhorn_knopp_decentralized(const Matrix& a_with_loops,
                                                         int max_rounds = 20'000,
                                                         double tol = 1e-10);

}  // namespace snl
