// Serial reference vs OpenMP kernels on the Monte Carlo and risk-curve paths.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fdrthresh/risk_engine.hpp"
#include "fdrthresh/simulation.hpp"

using namespace fdrthresh;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

void BM_McRiskFdrSoft(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const auto count = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto theta = ThetaGenerator::spikes(n, count, 3.0).generate();
  McOptions options;
  options.replicates = 64;
  options.execution = mode(state);
  const auto spec = EstimatorSpec::fdr(ThresholdFamily::soft());
  for (auto _ : state) benchmark::DoNotOptimize(mc_risk(theta, spec, options).mean);
  label(state);
}
BENCHMARK(BM_McRiskFdrSoft)->ArgsProduct({{0, 1}, {1024, 16384}})->Unit(benchmark::kMillisecond);

void BM_RegretExperiment(benchmark::State& state) {
  const auto theta = ThetaGenerator::spikes(4096, 64, 3.0).generate();
  McOptions options;
  options.replicates = 32;
  options.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regret_experiment(theta, ThresholdFamily::soft(), FdrConfig{}, options).ratio);
  }
  label(state);
}
BENCHMARK(BM_RegretExperiment)->Args({0, 0})->Args({1, 0})->Unit(benchmark::kMillisecond);

void BM_RiskCurve(benchmark::State& state) {
  std::vector<double> atoms(2000, 0.0);
  for (std::size_t i = 0; i < 200; ++i) atoms[i] = 0.02 * static_cast<double>(i);
  const EmpiricalPrior prior(atoms);
  const auto grid = uniform_grid(8.0, static_cast<std::size_t>(state.range(1)));
  RiskCurveOptions options;
  options.execution = mode(state);
  options.family = ThresholdFamily::firm(1.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_risk_curve(prior, RiskFunctional::RGsmooth, grid, options).values.back());
  }
  label(state);
}
BENCHMARK(BM_RiskCurve)->ArgsProduct({{0, 1}, {400, 4000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
