#include "snl/matrix_design.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "snl/error.hpp"
#include "snl/problem.hpp"
#include "snl/sinkhorn.hpp"

namespace snl {

namespace {

void require_adjacency(const Matrix& a) {
  require(a.rows() == a.cols() && a.rows() > 0, ErrorKind::InvalidArgument,
          "adjacency must be square and nonempty");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    require(a(i, i) == 0.0, ErrorKind::InvalidArgument, "adjacency diagonal must be zero");
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      require(a(i, j) == 0.0 || a(i, j) == 1.0, ErrorKind::InvalidArgument,
              "adjacency entries must be 0 or 1");
      require(a(i, j) == a(j, i), ErrorKind::InvalidArgument, "adjacency must be symmetric");
    }
  }
  require(is_connected(a), ErrorKind::Disconnected, "communication graph is disconnected");
}

Vector sorted_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numeric, "eigensolver failed");
  return es.eigenvalues();
}

}  // namespace

MatrixParams two_block_from_block(const Matrix& block) {
  require(block.rows() == block.cols() && block.rows() > 0, ErrorKind::InvalidArgument,
          "2-Block design needs a square block");
  const Eigen::Index n = block.rows();
  MatrixParams p;
  p.block_size = static_cast<int>(n);
  p.block = block;
  p.Z = Matrix::Zero(2 * n, 2 * n);
  p.Z.topLeftCorner(n, n) = 2.0 * Matrix::Identity(n, n);
  p.Z.bottomRightCorner(n, n) = 2.0 * Matrix::Identity(n, n);
  p.Z.topRightCorner(n, n) = -2.0 * block.transpose();
  p.Z.bottomLeftCorner(n, n) = -2.0 * block;
  p.W = p.Z;
  p.L = lower_factor(p.Z);
  return p;
}

MatrixParams two_block_params(const Matrix& adjacency, double tol) {
  require_adjacency(adjacency);
  const Eigen::Index n = adjacency.rows();
  Matrix block;
  try {
    block = sinkhorn_knopp(adjacency + Matrix::Identity(n, n), tol);
  } catch (const Error& e) {
    // A + I always has support for a connected graph.
    fail(ErrorKind::Numeric, std::string("internal: Sinkhorn-Knopp failed on A + I: ") + e.what());
  }
  return two_block_from_block(block);
}

MatrixParams two_block_params_decentralized(const Matrix& adjacency, double tol) {
  require_adjacency(adjacency);
  const Eigen::Index n = adjacency.rows();
  const auto result = sinkhorn_knopp_decentralized(adjacency + Matrix::Identity(n, n), 20'000, tol);
  return two_block_from_block(result.assemble());
}

Matrix lower_factor(const Matrix& z, double tol) {
  require(z.rows() == z.cols(), ErrorKind::InvalidArgument, "lower_factor: Z must be square");
  require((z - z.transpose()).cwiseAbs().maxCoeff() <= tol, ErrorKind::InvalidArgument,
          "lower_factor: Z must be symmetric");
  require((z.diagonal().array() - 2.0).abs().maxCoeff() <= tol, ErrorKind::InvalidArgument,
          "lower_factor: diag(Z) must equal 2");
  Matrix l = Matrix::Zero(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) l(i, j) = -z(i, j);
  return l;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
  return j.dump(1);
}

ValidationReport validate_params(const MatrixParams& params, const Matrix& adjacency, double tol) {
  const Matrix& Z = params.Z;
  const Matrix& W = params.W;
  const Matrix& L = params.L;
  const Eigen::Index p = Z.rows();
  require(W.rows() == p && W.cols() == p && Z.cols() == p && L.rows() == p && L.cols() == p,
          ErrorKind::InvalidArgument, "validate_params: Z, W, L must share one square shape");

  ValidationReport report;
  auto add = [&](std::string name, double residual) {
    report.checks.push_back({std::move(name), residual <= tol, residual});
  };

  add("symmetric", std::max((Z - Z.transpose()).cwiseAbs().maxCoeff(),
                            (W - W.transpose()).cwiseAbs().maxCoeff()));
  add("z_minus_w_psd", std::max(0.0, -sorted_eigenvalues(Z - W)(0)));
  add("w_ones_zero", (W * Vector::Ones(p)).cwiseAbs().maxCoeff());

  const Vector w_eigs = sorted_eigenvalues(W);
  const double lambda2 = p > 1 ? w_eigs(1) : 0.0;
  report.checks.push_back(
      {"nullspace_dim_one", std::abs(w_eigs(0)) <= tol && lambda2 > tol, lambda2});

  add("diag_z_two", (Z.diagonal().array() - 2.0).abs().maxCoeff());
  add("ones_z_ones_zero", std::abs(Z.sum()));

  const Matrix recon = 2.0 * Matrix::Identity(p, p) - L - L.transpose();
  double lower_residual = (recon - Z).cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i; j < p; ++j) lower_residual = std::max(lower_residual, std::abs(L(i, j)));
  add("lower_reconstruction", lower_residual);

  const Eigen::Index n = adjacency.rows();
  if (p != 2 * n) {
    report.checks.push_back({"two_block_structure", false, INFINITY});
    report.checks.push_back({"two_block_adherence", false, INFINITY});
    return report;
  }
  const Matrix two_i = 2.0 * Matrix::Identity(n, n);
  add("two_block_structure", std::max((Z.topLeftCorner(n, n) - two_i).cwiseAbs().maxCoeff(),
                                      (Z.bottomRightCorner(n, n) - two_i).cwiseAbs().maxCoeff()));
  double adherence = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || adjacency(i, j) != 0.0) continue;
      for (double v : {Z(i, n + j), Z(n + j, i), Z(n + i, j), Z(j, n + i), W(i, j), W(j + n, i),
                       W(i + n, j), W(i + n, j + n)}) {
        adherence = std::max(adherence, std::abs(v));
      }
    }
  }
  add("two_block_adherence", adherence);
  return report;
}

}  // namespace snl
