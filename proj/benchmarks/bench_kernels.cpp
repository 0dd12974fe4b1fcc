#include <benchmark/benchmark.h>

#include "cdd/bath.hpp"

using namespace cdd;

namespace {

const OhmicSpectralDensity kSd{};
const ThermalBath kBath = ThermalBath::from_kelvin(0.2, 1e-9);

void bm_thermal_kernel(benchmark::State& state) {
  // Later times need more series terms before the tail estimate converges.
  const double t = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(thermal_kernel(kSd, kBath, t));
}
BENCHMARK(bm_thermal_kernel)->Arg(0)->Arg(5)->Arg(10)->Arg(20);

void bm_emission_kernel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(emission_kernel(kSd, kBath, 0.5));
}
BENCHMARK(bm_emission_kernel);

void bm_kernel_table(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dt = 1.0 / n;
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel_table(kSd, kBath, dt, n));
  state.SetComplexityN(n);
}
BENCHMARK(bm_kernel_table)->Arg(400)->Arg(800)->Arg(1600)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
