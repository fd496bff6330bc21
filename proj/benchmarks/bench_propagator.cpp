#include <benchmark/benchmark.h>

#include "tdjcm/algebra.hpp"
#include "tdjcm/oracle.hpp"
#include "tdjcm/propagator.hpp"
#include "tdjcm/states.hpp"

using namespace tdjcm;

namespace {
const ModelSpec kModel = make_standard_jcm(1.0, 2.0);  // delta tau = 1
const PulseParams kPulse{5.0, 1.0, -10.0};
}  // namespace

static void BM_Coefficients(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        hypergeometric_coefficients(20.0, cplx(0.5, 1.0), 4.54e-5));
}
BENCHMARK(BM_Coefficients);

static void BM_PropagateSubspace(benchmark::State& state) {
  const int delta = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(propagate_subspace(kModel, kPulse, delta, 3.0));
}
BENCHMARK(BM_PropagateSubspace)->Arg(1)->Arg(10)->Arg(30);

// a full dense sweep through one subspace, as the series generators use it
static void BM_TrajectorySweep(benchmark::State& state) {
  for (auto _ : state) {
    SubspaceTrajectory traj(kModel, kPulse, 11);
    double acc = 0.0;
    for (double t = -10.0; t <= 15.0; t += 0.01) acc += std::norm(traj.at(t).f);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TrajectorySweep);

static void BM_OracleIntegrate(benchmark::State& state) {
  const OdeSettings st{1e-10, 1e-12, 4'000'000};
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_subspace(kModel, kPulse, 4, 10.0, st));
}
BENCHMARK(BM_OracleIntegrate);

static void BM_CoherentInversionSeries(benchmark::State& state) {
  const ModelSpec res = make_standard_jcm(1.0, 1.0);
  std::vector<double> times;
  for (double t = -10.0; t <= 15.0; t += 0.05) times.push_back(t);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        inversion_series_coherent(res, kPulse, 10.0, times, 1e-12));
}
BENCHMARK(BM_CoherentInversionSeries);

BENCHMARK_MAIN();
