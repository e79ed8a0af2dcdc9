#include "snl/prox.hpp"

#include <atomic>
#include <cmath>

#include "snl/error.hpp"

namespace snl {

namespace {

std::atomic<std::uint64_t> factorizations{0};

double min_eigenvalue(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numeric, "eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace

Vector soft_threshold(const Vector& x, double tau) {
  require(tau >= 0.0, ErrorKind::InvalidArgument, "soft_threshold: tau must be >= 0");
  return x.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag > 0.0 ? std::copysign(mag, v) : 0.0;
  });
}

Matrix psd_project(const Matrix& s) {
  require(s.rows() == s.cols(), ErrorKind::InvalidArgument, "psd_project: matrix must be square");
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  require(es.info() == Eigen::Success, ErrorKind::Numeric, "psd_project: eigensolver failed");
  const Vector clipped = es.eigenvalues().cwiseMax(0.0);
  const Matrix& v = es.eigenvectors();
  return v * clipped.asDiagonal() * v.transpose();
}

std::vector<int> submatrix_sensors(const ProblemInstance& instance, int i) {
  std::vector<int> idx;
  idx.reserve(1 + instance.sensor_neighbors[i].size());
  idx.push_back(i);
  idx.insert(idx.end(), instance.sensor_neighbors[i].begin(), instance.sensor_neighbors[i].end());
  return idx;
}

Matrix principal_submatrix(const ProblemInstance& instance, int i, const LiftedPoint& p) {
  const int d = instance.d;
  const auto idx = submatrix_sensors(instance, i);
  const int q = static_cast<int>(idx.size());
  Matrix s(d + q, d + q);
  s.topLeftCorner(d, d).setIdentity();
  for (int r = 0; r < q; ++r) {
    for (int k = 0; k < d; ++k) {
      s(d + r, k) = p.X(idx[r], k);
      s(k, d + r) = p.X(idx[r], k);
    }
    for (int t = 0; t < q; ++t) s(d + r, d + t) = p.Y(idx[r], idx[t]);
  }
  return s;
}

double psd_violation(const ProblemInstance& instance, int i, const LiftedPoint& p) {
  return std::max(0.0, -min_eigenvalue(principal_submatrix(instance, i, p)));
}

DeltaProxResult delta_prox(const ProblemInstance& instance, int i, const LiftedPoint& pk,
                           bool measure) {
  const int d = instance.d;
  const auto idx = submatrix_sensors(instance, i);
  const int q = static_cast<int>(idx.size());
  const Matrix proj = psd_project(principal_submatrix(instance, i, pk));

  DeltaProxResult out{pk, 0.0};
  for (int r = 0; r < q; ++r) {
    for (int k = 0; k < d; ++k) out.point.X(idx[r], k) = proj(d + r, k);
    for (int t = 0; t < q; ++t)
      out.point.Y(idx[r], idx[t]) = 0.5 * (proj(d + r, d + t) + proj(d + t, d + r));
  }
  if (measure) out.reimposed_violation = psd_violation(instance, i, out.point);
  return out;
}

Vector GProxData::vectorize(const LiftedPoint& p) const {
  const auto q = static_cast<int>(neighbors.size());
  Vector v(variables());
  v(0) = p.Y(sensor, sensor);
  for (int t = 0; t < q; ++t) {
    const int j = neighbors[t];
    v(1 + 2 * t) = p.Y(j, j);
    v(2 + 2 * t) = p.Y(sensor, j);
  }
  for (int k = 0; k < dim; ++k) v(1 + 2 * q + k) = p.X(sensor, k);
  return v;
}

void GProxData::scatter(const Vector& v, LiftedPoint& p) const {
  const auto q = static_cast<int>(neighbors.size());
  p.Y(sensor, sensor) = v(0);
  for (int t = 0; t < q; ++t) {
    const int j = neighbors[t];
    p.Y(j, j) = v(1 + 2 * t);
    p.Y(sensor, j) = v(2 + 2 * t);
    p.Y(j, sensor) = v(2 + 2 * t);
  }
  for (int k = 0; k < dim; ++k) p.X(sensor, k) = v(1 + 2 * q + k);
}

std::uint64_t g_prox_factorization_count() noexcept { return factorizations.load(); }

GProxData build_g_prox_data(const ProblemInstance& instance, int i, double rho) {
  require(rho > 0.0, ErrorKind::InvalidArgument, "g_prox: rho must be > 0");
  require(i >= 0 && i < instance.n, ErrorKind::InvalidArgument, "g_prox: sensor out of range");
  GProxData data;
  data.sensor = i;
  data.dim = instance.d;
  data.neighbors = instance.sensor_neighbors[i];
  data.rho = rho;

  const auto q = static_cast<int>(data.neighbors.size());
  const auto& anchors = instance.anchor_neighbors[i];
  const auto r = static_cast<int>(anchors.size());
  const int nv = 1 + 2 * q + instance.d;

  data.K = Matrix::Zero(q + r, nv);
  data.c.resize(q + r);
  for (int t = 0; t < q; ++t) {
    const double dij = instance.dist_ss[i][t];
    data.K(t, 0) = 1.0;
    data.K(t, 1 + 2 * t) = 1.0;
    data.K(t, 2 + 2 * t) = -2.0;
    data.c(t) = dij * dij;
  }
  for (int s = 0; s < r; ++s) {
    const auto a = instance.anchors.row(anchors[s]);
    const double dik = instance.dist_sa[i][s];
    data.K(q + s, 0) = 1.0;
    data.K.block(q + s, 1 + 2 * q, 1, instance.d) = -2.0 * a;
    data.c(q + s) = dik * dik - a.squaredNorm();
  }

  data.D = Vector::Constant(nv, std::sqrt(2.0));
  data.D(0) = 1.0;
  for (int t = 0; t < q; ++t) data.D(1 + 2 * t) = 1.0;

  Matrix h = rho * data.K.transpose() * data.K;
  h.diagonal() += data.D.cwiseAbs2();
  data.chol.compute(h);
  require(data.chol.info() == Eigen::Success, ErrorKind::Numeric, "g_prox: Cholesky failed");
  factorizations.fetch_add(1);
  data.solve_map = data.chol.solve(rho * data.K.transpose());
  data.k_solve = data.K * data.solve_map;
  data.k_gram = data.K * data.K.transpose();

  data.lambda_ws = Vector::Zero(q + r);
  data.y_ws = Vector::Zero(q + r);
  return data;
}

GProxResult g_prox(GProxData& data, const LiftedPoint& pk, double alpha, double tol,
                   int max_inner) {
  require(alpha > 0.0, ErrorKind::InvalidArgument, "g_prox: alpha must be > 0");
  require(tol > 0.0, ErrorKind::InvalidArgument, "g_prox: tol must be > 0");
  GProxResult result{pk, 0, true};
  if (data.rows() == 0) return result;

  const Vector vk = data.vectorize(pk);
  const Vector ck = data.c - data.K * vk;
  const double tau = alpha / data.rho;

  Vector& lambda = data.lambda_ws;
  Vector& y = data.y_ws;
  const Eigen::Index rows = data.rows();
  // Only K w enters the loop, so iterate on u = lambda + c^k - y and recover
  // w = solve_map * u at the end.
  Vector u(rows);
  Vector kw(rows);
  Vector dy(rows);
  Vector step(rows);

  result.converged = false;
  for (int it = 1; it <= max_inner; ++it) {
    u.noalias() = lambda + ck - y;
    kw.noalias() = data.k_solve * u;
    double step_sq = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double z = ck(r) - kw(r) + lambda(r);
      const double y_next = z > tau ? z - tau : (z < -tau ? z + tau : 0.0);
      dy(r) = y_next - y(r);
      y(r) = y_next;
      step(r) = ck(r) - kw(r) - y_next;
      step_sq += step(r) * step(r);
    }
    lambda += step;
    const double dual = data.rho * std::sqrt(std::max(0.0, dy.dot(data.k_gram * dy)));
    result.iterations = it;
    if (std::sqrt(step_sq) <= tol && dual <= tol) {
      result.converged = true;
      break;
    }
  }
  const Vector w = data.solve_map * u;
  data.scatter(vk + w, result.point);
  return result;
}

double InnerSchedule::tolerance(int outer_iteration) const {
  const int steps = every > 0 ? outer_iteration / every : 0;
  return std::max(tol_min, tol0 * std::pow(beta, steps));
}

}  // namespace snl
