#include <benchmark/benchmark.h>

#include "tdjcm/specfun.hpp"

using tdjcm::cplx;

static void BM_LogGamma(benchmark::State& state) {
  const cplx w(3.7, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(tdjcm::specfun::log_gamma(w));
}
BENCHMARK(BM_LogGamma);

// direct Maclaurin regime
static void BM_Hyp2F1_Series(benchmark::State& state) {
  const cplx a(1.3), b(-1.3), c(0.5, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdjcm::specfun::hyp2f1(a, b, c, 0.3));
}
BENCHMARK(BM_Hyp2F1_Series);

// 1-z connection regime
static void BM_Hyp2F1_Connection(benchmark::State& state) {
  const cplx a(1.3), b(-1.3), c(0.5, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdjcm::specfun::hyp2f1(a, b, c, 0.97));
}
BENCHMARK(BM_Hyp2F1_Connection);

// ODE-continuation regime (large pulse area), alpha swept
static void BM_Hyp2F1_March(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const cplx a(alpha), b(-alpha), c(0.5, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdjcm::specfun::hyp2f1(a, b, c, 0.5));
}
BENCHMARK(BM_Hyp2F1_March)->Arg(20)->Arg(60)->Arg(110);

BENCHMARK_MAIN();
