#include <benchmark/benchmark.h>

#include "ergonode/ergodic.hpp"
#include "ergonode/nuc_solver.hpp"
#include "ergonode/walks.hpp"

namespace {

ergonode::Graph bench_graph(int n) {
  return ergonode::smooth_graph(
      ergonode::generate_sbm(ergonode::SbmParams::linear(n, 0.6, 0.06), 0),
      1.0 / (10.0 * n));
}

void BM_SampleWalks(benchmark::State& state) {
  const ergonode::Graph g = bench_graph(static_cast<int>(state.range(0)));
  ergonode::WalkConfig cfg;
  cfg.walks_per_node = 5;
  cfg.walk_length = 200;
  for (auto _ : state)
    benchmark::DoNotOptimize(ergonode::sample_walks(g, cfg));
}
BENCHMARK(BM_SampleWalks)->Arg(50)->Arg(100)->Arg(200);

void BM_ErgodicLimits(benchmark::State& state) {
  const ergonode::Graph g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(ergonode::ergodic_limits(g, 8, 5.0));
}
BENCHMARK(BM_ErgodicLimits)->Arg(50)->Arg(100)->Arg(200);

void BM_NucSolveIterations(benchmark::State& state) {
  const ergonode::Graph g = bench_graph(100);
  const ergonode::LimitCoefficients limits = ergonode::ergodic_limits(g, 8, 5.0);
  ergonode::NucConfig cfg;
  cfg.nu = 0.108 * 100;
  cfg.max_iter = static_cast<int>(state.range(0));
  cfg.gap_tol = 1e-300;  // run the full iteration budget
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ergonode::solve_nuc(limits.positive, limits.negative, cfg));
}
BENCHMARK(BM_NucSolveIterations)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
