#include <benchmark/benchmark.h>

#include <random>

#include "cdd/eigenvalues.hpp"
#include "cdd/matrix.hpp"

using namespace cdd;

namespace {

CMat4 random_matrix(unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n;
  CMat4 m;
  for (auto& v : m.e) v = Complex{n(gen), n(gen)};
  return m;
}

void bm_multiply(benchmark::State& state) {
  const CMat4 a = random_matrix(1);
  const CMat4 b = random_matrix(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_multiply);

void bm_dagger(benchmark::State& state) {
  const CMat4 a = random_matrix(3);
  for (auto _ : state) benchmark::DoNotOptimize(dagger(a));
}
BENCHMARK(bm_dagger);

void bm_commutator(benchmark::State& state) {
  const CMat4 a = random_matrix(4);
  const CMat4 b = random_matrix(5);
  for (auto _ : state) benchmark::DoNotOptimize(commutator(a, b));
}
BENCHMARK(bm_commutator);

void bm_eig4(benchmark::State& state) {
  const CMat4 a = random_matrix(6);
  for (auto _ : state) benchmark::DoNotOptimize(eig4(a));
}
BENCHMARK(bm_eig4);

}  // namespace

BENCHMARK_MAIN();
