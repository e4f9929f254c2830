#include <benchmark/benchmark.h>

#include <nilflow/brackets.hpp>
#include <nilflow/integrators.hpp>
#include <nilflow/sampling.hpp>

using namespace nilflow;

namespace {

ProductState sample() {
  Rng rng(1);
  return sample_regular_horizontal(rng);
}

void BM_SphereExact(benchmark::State& state) {
  SphereCotangent s = sample().sphere;
  for (auto _ : state) {
    s = step_sphere_exact(s, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SphereExact);

void BM_NilEuler(benchmark::State& state) {
  NilCotangent s = sample().nil;
  for (auto _ : state) {
    s = step_nil_euler(s, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_NilEuler);

void BM_ChartMidpoint(benchmark::State& state) {
  const ReducedHamiltonian h(FiberProfile::submersion());
  ReducedState s = reduced_from_product(sample());
  IntegratorConfig cfg;
  cfg.scheme = Scheme::implicit_midpoint_chart;
  for (auto _ : state) {
    s = step_chart_midpoint(h, s, 1e-3, cfg);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ChartMidpoint);

void BM_PoissonBracket(benchmark::State& state) {
  const ProductState s = sample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_bracket(IntegralId::f2, IntegralId::f3, s));
  }
}
BENCHMARK(BM_PoissonBracket);

void BM_IndependenceRank(benchmark::State& state) {
  const ProductState s = sample();
  const std::vector<IntegralId> ids{IntegralId::H1, IntegralId::H2, IntegralId::f1, IntegralId::f2,
                                    IntegralId::f3};
  for (auto _ : state) benchmark::DoNotOptimize(independence_rank(ids, s));
}
BENCHMARK(BM_IndependenceRank);

}  // namespace

BENCHMARK_MAIN();
