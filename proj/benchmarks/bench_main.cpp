#include <benchmark/benchmark.h>

#include <random>

#include "sunland/critical_catalog.hpp"
#include "sunland/fidelity_landscape.hpp"
#include "sunland/optimizer.hpp"
#include "sunland/sun_geometry.hpp"

using namespace sunland;

static void BM_ExpmSkew(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(1);
  const TangentDirection d = random_su_direction(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm_skew(d.omega()));
  }
}
BENCHMARK(BM_ExpmSkew)->DenseRange(2, 8, 2);

static void BM_SunFidelityDirection(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  const TargetGate a(random_special_unitary(n, rng).matrix());
  const SpecialUnitaryPoint s = random_special_unitary(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sun_fidelity_direction(a, s));
  }
}
BENCHMARK(BM_SunFidelityDirection)->DenseRange(2, 8, 2);

static void BM_HessianMatrix(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(3);
  const TargetGate a(random_special_unitary(n, rng).matrix());
  const SpecialUnitaryPoint s = random_special_unitary(n, rng);
  const SuNBasis basis = sun_basis(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hessian_matrix(a, s, basis));
  }
}
BENCHMARK(BM_HessianMatrix)->DenseRange(2, 8, 2);

static void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(n));
  }
}
BENCHMARK(BM_Enumerate)->Arg(5)->Arg(8)->Arg(32);

static void BM_OptimizeRun(benchmark::State& state) {
  const auto n = state.range(0);
  const TargetGate id = TargetGate::identity(n);
  OptimizerConfig config;
  config.mode = OptimizeMode::Minimize;
  int start = 0;
  for (auto _ : state) {
    const SpecialUnitaryPoint s = random_special_unitary(n, start_seed(0, start++));
    benchmark::DoNotOptimize(run(id, s, config));
  }
}
BENCHMARK(BM_OptimizeRun)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
