#include <benchmark/benchmark.h>

#include <random>

#include "vilenkin/hardy.hpp"
#include "vilenkin/system.hpp"

namespace {

using namespace vilenkin;

GridFunction random_function(const GeneratorSequence& g) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = Complex(u(rng), u(rng));
  return f;
}

void BM_ForwardWalsh(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, static_cast<int>(state.range(0)));
  const auto f = random_function(g);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_ForwardWalsh)->DenseRange(8, 18, 2);

void BM_ForwardMixed(benchmark::State& state) {
  const auto g = GeneratorSequence::cycle({2, 3, 4}, static_cast<int>(state.range(0)));
  const auto f = random_function(g);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_ForwardMixed)->DenseRange(6, 12, 3);

void BM_NaiveForward(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, static_cast<int>(state.range(0)));
  const auto f = random_function(g);
  for (auto _ : state) benchmark::DoNotOptimize(naive_forward_transform(f));
}
BENCHMARK(BM_NaiveForward)->DenseRange(6, 10, 2);

void BM_DirichletKernel(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, 14);
  std::size_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_kernel(g, n));
    n = n % (g.size() - 1) + 1234;
  }
}
BENCHMARK(BM_DirichletKernel);

void BM_FejerKernel(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, 14);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_kernel(g, 12345));
}
BENCHMARK(BM_FejerKernel);

void BM_SweepStep(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, 12);
  const auto f = random_function(g);
  PartialSumSweep sweep(f);
  GridFunction sigma(g);
  for (auto _ : state) {
    if (sweep.index() == g.size()) {
      state.PauseTiming();
      sweep = PartialSumSweep(f);
      state.ResumeTiming();
    }
    sweep.advance();
    sweep.fejer_mean_into(sigma);
    benchmark::DoNotOptimize(sigma);
  }
}
BENCHMARK(BM_SweepStep);

void BM_HardyQuasinorm(benchmark::State& state) {
  const auto g = GeneratorSequence::constant(2, static_cast<int>(state.range(0)));
  const auto f = random_function(g);
  for (auto _ : state) benchmark::DoNotOptimize(hardy_quasinorm(f, 0.5));
}
BENCHMARK(BM_HardyQuasinorm)->DenseRange(8, 16, 4);

}  // namespace

BENCHMARK_MAIN();
