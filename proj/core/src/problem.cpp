#include "snl/problem.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "snl/error.hpp"
#include "snl/rng.hpp"

namespace snl {

namespace {

std::string at_sensor(int i) { return " (sensor " + std::to_string(i) + ")"; }

}  // namespace

void ProblemInstance::validate() const {
  require(d >= 1, ErrorKind::InvalidInstance, "dimension d must be >= 1");
  require(n >= 1, ErrorKind::InvalidInstance, "sensor count n must be >= 1");
  require(m >= 0, ErrorKind::InvalidInstance, "anchor count m must be >= 0");
  require(anchors.rows() == m && (m == 0 || anchors.cols() == d), ErrorKind::InvalidInstance,
          "anchors must be m x d");
  require(anchors.allFinite(), ErrorKind::InvalidInstance, "anchor coordinates must be finite");
  const auto sz = static_cast<std::size_t>(n);
  require(sensor_neighbors.size() == sz && anchor_neighbors.size() == sz &&
              dist_ss.size() == sz && dist_sa.size() == sz,
          ErrorKind::InvalidInstance, "neighbor and distance lists must have n entries");
  for (int i = 0; i < n; ++i) {
    const auto& ns = sensor_neighbors[i];
    const auto& ms = anchor_neighbors[i];
    require(dist_ss[i].size() == ns.size(), ErrorKind::InvalidInstance,
            "dist_ss row length differs from sensor_neighbors" + at_sensor(i));
    require(dist_sa[i].size() == ms.size(), ErrorKind::InvalidInstance,
            "dist_sa row length differs from anchor_neighbors" + at_sensor(i));
    for (std::size_t t = 0; t < ns.size(); ++t) {
      require(ns[t] >= 0 && ns[t] < n && ns[t] != i, ErrorKind::InvalidInstance,
              "sensor neighbor index out of range" + at_sensor(i));
      require(std::count(ns.begin(), ns.end(), ns[t]) == 1, ErrorKind::InvalidInstance,
              "duplicate sensor neighbor" + at_sensor(i));
      require(std::isfinite(dist_ss[i][t]) && dist_ss[i][t] >= 0.0, ErrorKind::InvalidInstance,
              "sensor distance must be finite and nonnegative" + at_sensor(i));
    }
    for (std::size_t t = 0; t < ms.size(); ++t) {
      require(ms[t] >= 0 && ms[t] < m, ErrorKind::InvalidInstance,
              "anchor neighbor index out of range" + at_sensor(i));
      require(std::count(ms.begin(), ms.end(), ms[t]) == 1, ErrorKind::InvalidInstance,
              "duplicate anchor neighbor" + at_sensor(i));
      require(std::isfinite(dist_sa[i][t]) && dist_sa[i][t] >= 0.0, ErrorKind::InvalidInstance,
              "anchor distance must be finite and nonnegative" + at_sensor(i));
    }
  }
  if (truth) {
    require(truth->rows() == n && truth->cols() == d && truth->allFinite(),
            ErrorKind::InvalidInstance, "truth must be a finite n x d matrix");
  }
  require(is_connected(build_adjacency(*this)), ErrorKind::Disconnected,
          "sensor communication graph is disconnected");
}

Vector ProblemInstance::anchor_mean() const {
  require(m > 0, ErrorKind::InvalidArgument, "anchor mean needs at least one anchor");
  return anchors.colwise().mean().transpose();
}

namespace {

ProblemInstance draw_instance(const InstanceParams& p, std::uint64_t seed) {
  Rng rng(seed);
  ProblemInstance inst;
  inst.d = p.d;
  inst.n = p.n;
  inst.m = p.m;

  Matrix sensors(p.n, p.d);
  for (int i = 0; i < p.n; ++i)
    for (int k = 0; k < p.d; ++k) sensors(i, k) = rng.uniform01();
  inst.anchors.resize(p.m, p.d);
  for (int a = 0; a < p.m; ++a)
    for (int k = 0; k < p.d; ++k) inst.anchors(a, k) = rng.uniform01();

  const auto cap = static_cast<std::size_t>(p.max_degree);
  inst.sensor_neighbors.resize(p.n);
  inst.anchor_neighbors.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    std::vector<int> near;
    for (int j = 0; j < p.n; ++j)
      if (j != i && (sensors.row(i) - sensors.row(j)).norm() < p.radius) near.push_back(j);
    inst.sensor_neighbors[i] = rng.sample_subset(near, cap);

    std::vector<int> near_anchors;
    for (int a = 0; a < p.m; ++a)
      if ((sensors.row(i) - inst.anchors.row(a)).norm() < p.radius) near_anchors.push_back(a);
    inst.anchor_neighbors[i] = rng.sample_subset(near_anchors, cap);
  }

  inst.dist_ss.resize(p.n);
  inst.dist_sa.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    for (int j : inst.sensor_neighbors[i]) {
      const double d0 = (sensors.row(i) - sensors.row(j)).norm();
      inst.dist_ss[i].push_back(std::max(0.0, d0 * (1.0 + p.noise_factor * rng.normal())));
    }
    for (int a : inst.anchor_neighbors[i]) {
      const double d0 = (sensors.row(i) - inst.anchors.row(a)).norm();
      inst.dist_sa[i].push_back(std::max(0.0, d0 * (1.0 + p.noise_factor * rng.normal())));
    }
  }
  inst.truth = std::move(sensors);
  return inst;
}

}  // namespace

ProblemInstance generate_instance(const InstanceParams& params, std::uint64_t seed) {
  require(params.n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
  require(params.m >= 0, ErrorKind::InvalidArgument, "m must be >= 0");
  require(params.d >= 1, ErrorKind::InvalidArgument, "d must be >= 1");
  require(params.radius > 0.0, ErrorKind::InvalidArgument, "radius must be > 0");
  require(params.max_degree >= 0, ErrorKind::InvalidArgument, "max_degree must be >= 0");
  require(params.noise_factor >= 0.0, ErrorKind::InvalidArgument, "noise_factor must be >= 0");

  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
    ProblemInstance inst = draw_instance(params, s);
    if (is_connected(build_adjacency(inst))) return inst;
  }
  fail(ErrorKind::Disconnected,
       "no connected instance in " + std::to_string(kMaxGenerationAttempts) +
           " draws; radius too small for these parameters");
}

double g_i(const ProblemInstance& instance, int i, const LiftedPoint& p) {
  const auto& Y = p.Y;
  double total = 0.0;
  const auto& ns = instance.sensor_neighbors[i];
  for (std::size_t t = 0; t < ns.size(); ++t) {
    const int j = ns[t];
    const double dij = instance.dist_ss[i][t];
    total += std::abs(dij * dij - Y(i, i) - Y(j, j) + 2.0 * Y(i, j));
  }
  const auto& ms = instance.anchor_neighbors[i];
  for (std::size_t t = 0; t < ms.size(); ++t) {
    const auto a = instance.anchors.row(ms[t]);
    const double dik = instance.dist_sa[i][t];
    total += std::abs(dik * dik - Y(i, i) - a.squaredNorm() + 2.0 * a.dot(p.X.row(i)));
  }
  return total;
}

double objective(const ProblemInstance& instance, const LiftedPoint& p) {
  double total = 0.0;
  for (int i = 0; i < instance.n; ++i) total += g_i(instance, i, p);
  return total;
}

Matrix build_adjacency(const ProblemInstance& instance) {
  Matrix a = Matrix::Zero(instance.n, instance.n);
  for (int i = 0; i < instance.n; ++i) {
    for (int j : instance.sensor_neighbors[i]) {
      a(i, j) = 1.0;
      a(j, i) = 1.0;
    }
  }
  return a;
}

std::vector<std::vector<int>> neighbor_lists(const Matrix& adjacency) {
  const auto n = static_cast<int>(adjacency.rows());
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && adjacency(i, j) != 0.0) out[i].push_back(j);
  return out;
}

bool is_connected(const Matrix& adjacency) {
  const auto n = static_cast<int>(adjacency.rows());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && (adjacency(u, v) != 0.0 || adjacency(v, u) != 0.0)) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

std::size_t edge_count(const Matrix& adjacency) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
    for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j)
      if (adjacency(i, j) != 0.0) ++count;
  return count;
}

}  // namespace snl
