#include "snl/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snl/error.hpp"
#include "snl/network.hpp"
#include "snl/problem.hpp"

namespace snl {

namespace {

bool symmetric(const Matrix& a) { return (a - a.transpose()).cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

SinkhornResult sinkhorn_knopp_detailed(const Matrix& a, const SinkhornOptions& options) {
  require(a.rows() == a.cols() && a.rows() > 0, ErrorKind::InvalidArgument,
          "sinkhorn_knopp: matrix must be square and nonempty");
  require(a.allFinite() && a.minCoeff() >= 0.0, ErrorKind::InvalidArgument,
          "sinkhorn_knopp: matrix must be finite and nonnegative");
  require(options.tol > 0.0 && options.max_iter > 0, ErrorKind::InvalidArgument,
          "sinkhorn_knopp: tol and max_iter must be positive");

  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    require(a.row(i).sum() > 0.0, ErrorKind::NoSupport,
            "sinkhorn_knopp: row " + std::to_string(i) + " is all zero");
    require(a.col(i).sum() > 0.0, ErrorKind::NoSupport,
            "sinkhorn_knopp: column " + std::to_string(i) + " is all zero");
  }

  Matrix b = a;
  Vector row_scale = Vector::Ones(n);
  Vector col_scale = Vector::Ones(n);
  SinkhornResult result;
  double deviation = 0.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = b.row(i).sum();
      require(s > 0.0, ErrorKind::NoSupport, "sinkhorn_knopp: row mass vanished");
      b.row(i) /= s;
      row_scale(i) /= s;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = b.col(j).sum();
      require(s > 0.0, ErrorKind::NoSupport, "sinkhorn_knopp: column mass vanished");
      b.col(j) /= s;
      col_scale(j) /= s;
    }
    if (row_scale.maxCoeff() > kMaxScaling || col_scale.maxCoeff() > kMaxScaling) {
      fail(ErrorKind::NoSupport, "sinkhorn_knopp: scaling factors diverged after " +
                                     std::to_string(it) + " iterations (matrix lacks support)");
    }
    deviation = (b.rowwise().sum().array() - 1.0).abs().maxCoeff();
    if (deviation <= options.tol) {
      result.iterations = it;
      break;
    }
  }
  if (result.iterations == 0) {
    fail(ErrorKind::NoSupport, "sinkhorn_knopp: no convergence in " +
                                   std::to_string(options.max_iter) +
                                   " iterations (deviation " + std::to_string(deviation) +
                                   "); matrix likely lacks support");
  }
  result.deviation = deviation;
  if (symmetric(a)) {
    result.asymmetry = (b - b.transpose()).cwiseAbs().maxCoeff();
    b = (0.5 * (b + b.transpose())).eval();
  }
  result.matrix = std::move(b);
  return result;
}

Matrix sinkhorn_knopp(const Matrix& a, double tol, int max_iter) {
  return sinkhorn_knopp_detailed(a, {tol, max_iter}).matrix;
}

Matrix DecentralizedSinkhornResult::assemble() const {
  const auto n = static_cast<Eigen::Index>(weights.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (const auto& [j, w] : weights[i]) out(i, j) = w;
  return 0.5 * (out + out.transpose());
}

DecentralizedSinkhornResult sinkhorn_knopp_decentralized(const Matrix& a_with_loops,
                                                         int max_rounds, double tol) {
  const auto n = static_cast<int>(a_with_loops.rows());
  require(n > 0 && a_with_loops.cols() == n, ErrorKind::InvalidArgument,
          "decentralized sinkhorn: adjacency must be square");
  require(symmetric(a_with_loops), ErrorKind::InvalidArgument,
          "decentralized sinkhorn: adjacency must be symmetric");
  for (int i = 0; i < n; ++i)
    require(a_with_loops(i, i) > 0.0, ErrorKind::InvalidArgument,
            "decentralized sinkhorn: every node needs a self loop");
  require(is_connected(a_with_loops), ErrorKind::Disconnected,
          "decentralized sinkhorn: graph is disconnected");

  const auto neighbors = neighbor_lists(a_with_loops);
  SimulatedNetwork<double> net(neighbors);

  DecentralizedSinkhornResult result;
  result.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    result.weights[i][i] = a_with_loops(i, i);
    for (int j : neighbors[i]) result.weights[i][j] = a_with_loops(i, j);
  }
  auto& w = result.weights;

  // column[j][i]: node j's copy of the weight on edge (i, j).
  std::vector<std::map<int, double>> column(n);

  while (result.rounds + 2 <= max_rounds) {
    // Row scaling, then each node sends w_ij to j.
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (const auto& [j, v] : w[i]) s += v;
      for (auto& [j, v] : w[i]) v /= s;
      for (int j : neighbors[i]) net.send(i, j, w[i][j], sizeof(double));
    }
    result.messages_per_round = net.deliver();
    result.total_messages += result.messages_per_round;
    ++result.rounds;

    // Column scaling at the receiving end, then each node returns the
    // scaled weight to its owner.
    for (int j = 0; j < n; ++j) {
      column[j].clear();
      column[j][j] = w[j][j];
      for (auto& env : net.receive(j)) column[j][env.from] = env.payload;
      double s = 0.0;
      for (const auto& [i, v] : column[j]) s += v;
      for (auto& [i, v] : column[j]) v /= s;
      w[j][j] = column[j][j];
      for (int i : neighbors[j]) net.send(j, i, column[j][i], sizeof(double));
    }
    result.total_messages += net.deliver();
    ++result.rounds;
    ++result.sweeps;

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (auto& env : net.receive(i)) w[i][env.from] = env.payload;
      double s = 0.0;
      for (const auto& [j, v] : w[i]) s += v;
      worst = std::max(worst, std::abs(s - 1.0));
    }
    result.deviation = worst;
    if (worst <= tol) return result;
  }
  fail(ErrorKind::NotConverged, "decentralized sinkhorn: deviation " +
                                    std::to_string(result.deviation) + " after " +
                                    std::to_string(result.rounds) + " rounds");
}

}  // namespace snl
