#include <benchmark/benchmark.h>

#include "cdd/solver.hpp"

using namespace cdd;

namespace {

// Short horizon keeps the step-count sweep within the drive-resolution
// bound; cost scales with n_steps^2 regardless of t_final.
void bm_integrate(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.t_final = 0.1;
  cfg.n_steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(cfg));
  state.SetComplexityN(cfg.n_steps);
}
BENCHMARK(bm_integrate)->Arg(200)->Arg(400)->Arg(800)->Complexity(benchmark::oNSquared);

void bm_master_rhs(benchmark::State& state) {
  SimulationConfig cfg;
  const double dt = 0.0005;
  const int n = static_cast<int>(state.range(0));
  const auto kernels = build_kernel_table(cfg.spectral, cfg.bath, dt, n);
  std::vector<DressedCouplingTable> couplings;
  for (const auto& ch : cfg.channels)
    couplings.push_back(sample_dressed_couplings(cfg, ch, dt, n));
  const CMat4 rho = cfg.initial_state.matrix();
  for (auto _ : state) benchmark::DoNotOptimize(master_rhs(cfg, kernels, couplings, n, rho));
  state.SetComplexityN(n);
}
BENCHMARK(bm_master_rhs)->Arg(250)->Arg(500)->Arg(1000)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
