#include <gtest/gtest.h>

#include "snl/admm.hpp"
#include "snl/error.hpp"
#include "snl/matrix_design.hpp"
#include "snl/splitting.hpp"
#include "snl/stats.hpp"

using namespace snl;

namespace {

ProblemInstance small_instance(std::uint64_t seed, int n = 12) {
  InstanceParams ip;
  ip.n = n;
  ip.m = 4;
  ip.radius = 0.6;
  return generate_instance(ip, seed);
}

}  // namespace

TEST(Gprime, TwoNodeExample) {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  Matrix expected(4, 4);
  expected << 0, 1, 1, 1,
              1, 0, 1, 1,
              1, 1, 0, 1,
              1, 1, 1, 0;
  EXPECT_EQ(build_gprime(a), expected);
  const auto k = build_k_sets(build_gprime(a));
  EXPECT_EQ(k[0], (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(k[3], (std::vector<int>{0, 1, 2}));
}

TEST(Gprime, SingleNode) {
  const Matrix a = Matrix::Zero(1, 1);
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(build_gprime(a), expected);
  const auto k = build_k_sets(expected);
  EXPECT_EQ(k[0], std::vector<int>{1});
  EXPECT_EQ(k[1], std::vector<int>{0});
}

TEST(Gprime, SetSizes) {
  const auto inst = small_instance(1);
  const Matrix adj = build_adjacency(inst);
  const auto nb = neighbor_lists(adj);
  const auto k = build_k_sets(build_gprime(adj));
  ASSERT_EQ(k.size(), 2u * inst.n);
  for (int i = 0; i < inst.n; ++i) {
    EXPECT_EQ(k[i].size(), 2 * nb[i].size() + 1);
    EXPECT_EQ(k[inst.n + i].size(), 2 * nb[i].size() + 1);
  }
}

TEST(Admm, WarmStartPattern) {
  const auto inst = small_instance(2);
  const Matrix xt = perturb_truth(inst, 0.1, 3);
  const auto st = warm_start_admm(inst, xt);
  const auto lifted = LiftedPoint::gram(xt);
  ASSERT_EQ(st.V.size(), 2u * inst.n);
  for (std::size_t i = 0; i < st.V.size(); ++i) {
    EXPECT_EQ(max_abs_diff(st.V[i], lifted), 0.0);
    EXPECT_EQ(max_abs_diff(st.R[i], lifted), 0.0);
    EXPECT_EQ(max_abs_diff(st.U[i], lifted), 0.0);
  }
  const auto cold = init_admm_cold(inst);
  for (const auto& v : cold.V) EXPECT_EQ(v.norm(), 0.0);
}

TEST(Admm, UpdateFormulas) {
  const auto inst = small_instance(3);
  AdmmOptions opts;
  auto st = warm_start_admm(inst, perturb_truth(inst, 0.1, 4));
  for (int k = 0; k < 3; ++k) admm_iterate(st, inst, opts);
  const auto before = st;
  admm_iterate(st, inst, opts);
  for (std::size_t i = 0; i < st.U.size(); ++i) {
    LiftedPoint mean = LiftedPoint::zero(inst.n, inst.d);
    for (int j : st.K_sets[i]) mean.axpy(1.0 / static_cast<double>(st.K_sets[i].size()), st.U[j]);
    EXPECT_LE(max_abs_diff(st.R[i], mean), 1e-12);
    const LiftedPoint v = before.V[i] + st.R[i] - 0.5 * before.R[i] - 0.5 * before.U[i];
    EXPECT_LE(max_abs_diff(st.V[i], v), 1e-12);
  }
  // PSD-block outputs are projections of V.
  for (int i = 0; i < inst.n; ++i) {
    const auto q = delta_prox(inst, i, before.V[inst.n + i], false).point;
    EXPECT_LE(max_abs_diff(st.U[inst.n + i], q), 1e-12);
  }
}

TEST(Admm, ConsensusPointIsStationaryForV) {
  const auto inst = small_instance(4);
  auto st = warm_start_admm(inst, *inst.truth);
  // With U = R = V the V update reduces to V + R_new - V; if every U_j equals
  // a common point c then R_new = c and V stays at c.
  const auto c = st.U.front();
  for (std::size_t i = 0; i < st.U.size(); ++i) {
    LiftedPoint mean = LiftedPoint::zero(inst.n, inst.d);
    for (int j : st.K_sets[i]) mean.axpy(1.0 / static_cast<double>(st.K_sets[i].size()), st.U[j]);
    const LiftedPoint v = st.V[i] + mean - 0.5 * st.R[i] - 0.5 * st.U[i];
    EXPECT_LE(max_abs_diff(v, c), 1e-12);
  }
}

TEST(Admm, SerialAndDecentralizedAgree) {
  const auto inst = small_instance(5);
  AdmmOptions opts;
  opts.max_iter = 40;
  const auto serial = run_admm(inst, opts, init_admm_cold(inst));
  opts.mode = ExecutionMode::Decentralized;
  const auto dec = run_admm(inst, opts, init_admm_cold(inst));
  ASSERT_EQ(serial.records.size(), dec.records.size());
  for (std::size_t k = 0; k < serial.records.size(); ++k) {
    EXPECT_NEAR(serial.records[k].objective, dec.records[k].objective, 1e-12);
    EXPECT_NEAR(serial.records[k].rel_error, dec.records[k].rel_error, 1e-12);
  }
  EXPECT_LE((serial.final_estimate - dec.final_estimate).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Admm, TrafficMatchesSplittingPerIteration) {
  const auto inst = small_instance(6);
  const Matrix adj = build_adjacency(inst);
  const int iters = 10;
  AdmmOptions ao;
  ao.max_iter = iters;
  ao.mode = ExecutionMode::Decentralized;
  const auto admm = run_admm(inst, ao, init_admm_cold(inst));
  EXPECT_EQ(admm.rounds, static_cast<std::size_t>(iters));
  const std::size_t directed = 2 * edge_count(adj);
  EXPECT_EQ(admm.messages, 2 * directed * iters);

  const auto params = two_block_params(adj);
  SolverOptions so;
  so.max_iter = iters;
  so.mode = ExecutionMode::Decentralized;
  const auto split = run(inst, params, so, init_cold(inst, params));
  EXPECT_EQ(split.rounds, 2u * iters);
  EXPECT_EQ(admm.messages, split.messages);
  EXPECT_EQ(admm.bytes, split.bytes);
}

TEST(Admm, EquivalentAlpha) {
  const auto inst = small_instance(7);
  const auto nb = neighbor_lists(build_adjacency(inst));
  AdmmOptions opts;
  opts.max_iter = 1;
  const auto tr = run_admm(inst, opts, init_admm_cold(inst));
  double total = 0.0;
  for (const auto& l : nb) total += 2.0 * (2.0 * static_cast<double>(l.size()) + 1.0);
  EXPECT_DOUBLE_EQ(tr.alpha, opts.alpha);
  EXPECT_NEAR(tr.equivalent_alpha, opts.alpha * 2.0 * inst.n / total, 1e-12);
}

TEST(Admm, StateAccountingIsSix) { EXPECT_EQ(admm_persistent_lifted_per_sensor(), 6); }

TEST(Admm, OptionsValidation) {
  AdmmOptions o;
  o.alpha = -1.0;
  EXPECT_THROW(o.validate(), Error);
  o.alpha = 1.0;
  o.early_stop = EarlyStop{0};
  EXPECT_THROW(o.validate(), Error);
}

TEST(Admm, ZeroWarmStartIsZeroState) {
  const auto inst = small_instance(8);
  const auto st = warm_start_admm(inst, Matrix::Zero(inst.n, inst.d));
  for (std::size_t i = 0; i < st.V.size(); ++i) {
    EXPECT_EQ(st.V[i].norm(), 0.0);
    EXPECT_EQ(st.R[i].norm(), 0.0);
    EXPECT_EQ(st.U[i].norm(), 0.0);
  }
}

TEST(Admm, ConsensusResidualTrendsDown) {
  const auto inst = small_instance(9);
  AdmmOptions opts;
  opts.max_iter = 300;
  const auto tr = run_admm(inst, opts, init_admm_cold(inst));
  std::vector<double> first, last;
  for (int k = 0; k < 50; ++k) {
    first.push_back(tr.records[k].consensus_residual);
    last.push_back(tr.records[250 + k].consensus_residual);
  }
  EXPECT_LT(median(last), median(first));
}
