#pragma once

#include <cstdint>
#include <random>

#include "snl/problem.hpp"
#include "snl/types.hpp"

namespace snl::fixtures {

// Sensor 0 observes sensors 1..neighbors and anchors 0..anchors-1; the other
// sensors observe nothing, so the graph is a star around sensor 0.
inline ProblemInstance single_sensor_toy(int neighbors, int anchors, std::uint64_t seed,
                                         double noise = 0.1) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  ProblemInstance inst;
  inst.d = 2;
  inst.n = 1 + neighbors;
  inst.m = anchors;
  Matrix truth(inst.n, 2);
  for (int i = 0; i < inst.n; ++i) truth.row(i) << unit(gen), unit(gen);
  inst.anchors = Matrix(anchors, 2);
  for (int k = 0; k < anchors; ++k) inst.anchors.row(k) << unit(gen), unit(gen);
  inst.sensor_neighbors.assign(inst.n, {});
  inst.anchor_neighbors.assign(inst.n, {});
  inst.dist_ss.assign(inst.n, {});
  inst.dist_sa.assign(inst.n, {});
  for (int j = 1; j <= neighbors; ++j) {
    inst.sensor_neighbors[0].push_back(j);
    inst.dist_ss[0].push_back((truth.row(0) - truth.row(j)).norm() * (1 + noise * normal(gen)));
  }
  for (int k = 0; k < anchors; ++k) {
    inst.anchor_neighbors[0].push_back(k);
    inst.dist_sa[0].push_back((truth.row(0) - inst.anchors.row(k)).norm() *
                              (1 + noise * normal(gen)));
  }
  inst.truth = truth;
  return inst;
}

inline LiftedPoint random_point(int n, int d, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  LiftedPoint p = LiftedPoint::zero(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) p.X(i, k) = scale * normal(gen);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.Y(i, j) = p.Y(j, i) = scale * normal(gen);
  return p;
}

inline Matrix random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = normal(gen);
  return a;
}

// Connected random graph: a random spanning tree plus extra edges.
inline Matrix random_connected_graph(int n, std::uint64_t seed, double extra = 0.1) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(unit(gen) * i);
    a(i, j) = a(j, i) = 1.0;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(gen) < extra) a(i, j) = a(j, i) = 1.0;
  return a;
}

}  // namespace snl::fixtures
