#include <benchmark/benchmark.h>

#include "snl/admm.hpp"
#include "snl/matrix_design.hpp"
#include "snl/prox.hpp"
#include "snl/sinkhorn.hpp"
#include "snl/splitting.hpp"

using namespace snl;

namespace {

const ProblemInstance& instance() {
  static const ProblemInstance inst = generate_instance({}, 0);
  return inst;
}

LiftedPoint perturbed_truth() {
  const auto& inst = instance();
  return LiftedPoint::gram(perturb_truth(inst, 0.1, 1));
}

void BM_GProx(benchmark::State& state) {
  const auto& inst = instance();
  auto data = build_g_prox_data(inst, 0);
  const auto pk = perturbed_truth();
  for (auto _ : state) {
    data.lambda_ws.setZero();
    data.y_ws.setZero();
    benchmark::DoNotOptimize(g_prox(data, pk, 10.0, 1e-6));
  }
}
BENCHMARK(BM_GProx);

void BM_DeltaProx(benchmark::State& state) {
  const auto& inst = instance();
  const auto pk = perturbed_truth();
  for (auto _ : state) benchmark::DoNotOptimize(delta_prox(inst, 0, pk, false));
}
BENCHMARK(BM_DeltaProx);

void BM_Sinkhorn(benchmark::State& state) {
  const Matrix adj = build_adjacency(instance());
  const Matrix loops = adj + Matrix::Identity(adj.rows(), adj.cols());
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_knopp(loops));
}
BENCHMARK(BM_Sinkhorn);

void BM_SplittingIteration(benchmark::State& state) {
  const auto& inst = instance();
  const auto params = two_block_params(build_adjacency(inst));
  SolverOptions opts;
  auto st = init_cold(inst, params);
  for (int k = 0; k < 50; ++k) iterate(st, inst, params, opts);
  for (auto _ : state) iterate(st, inst, params, opts);
}
BENCHMARK(BM_SplittingIteration)->Unit(benchmark::kMillisecond);

void BM_AdmmIteration(benchmark::State& state) {
  const auto& inst = instance();
  AdmmOptions opts;
  auto st = init_admm_cold(inst);
  for (int k = 0; k < 50; ++k) admm_iterate(st, inst, opts);
  for (auto _ : state) admm_iterate(st, inst, opts);
}
BENCHMARK(BM_AdmmIteration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
