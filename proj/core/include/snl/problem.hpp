#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "snl/types.hpp"

namespace snl {

// Noisy sensor network localization data. Sensor and anchor indices are
// 0-based. Distances are stored per directed observation: dist_ss[i][t] is
// sensor i's measurement to sensor_neighbors[i][t], so i->j and j->i may
// carry different noise.
struct ProblemInstance {
  int d = 0;
  int n = 0;
  int m = 0;
  Matrix anchors;  // m x d
  std::vector<std::vector<int>> sensor_neighbors;
  std::vector<std::vector<int>> anchor_neighbors;
  std::vector<std::vector<double>> dist_ss;
  std::vector<std::vector<double>> dist_sa;
  std::optional<Matrix> truth;  // n x d, evaluation only

  // Throws Error(InvalidInstance) on shape, index or sign violations and
  // Error(Disconnected) when the communication graph is not connected.
  void validate() const;

  Vector anchor_mean() const;
};

struct InstanceParams {
  int n = 30;
  int m = 6;
  int d = 2;
  double radius = 0.7;
  int max_degree = 7;
  double noise_factor = 0.05;
};

inline constexpr int kMaxGenerationAttempts = 1000;

// Random instance on [0,1]^d. Neighbors are the sensors (anchors) strictly
// within `radius`, uniformly subsampled down to `max_degree`; distances get
// multiplicative Gaussian noise d0 * (1 + noise_factor * eps). Draws whose
// communication graph is disconnected are rejected and redrawn with seeds
// derive_seed(seed, attempt).
ProblemInstance generate_instance(const InstanceParams& params, std::uint64_t seed);

// Sensor i's term of the node-based relaxation objective.
double g_i(const ProblemInstance& instance, int i, const LiftedPoint& p);
// Sum of g_i over all sensors.
double objective(const ProblemInstance& instance, const LiftedPoint& p);

// A_ij = 1 iff j in N_i or i in N_j.
Matrix build_adjacency(const ProblemInstance& instance);

bool is_connected(const Matrix& adjacency);
// Sorted neighbor list of every node (nonzero off-diagonal entries).
std::vector<std::vector<int>> neighbor_lists(const Matrix& adjacency);
std::size_t edge_count(const Matrix& adjacency);

}  // namespace snl
