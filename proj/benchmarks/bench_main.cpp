#include <benchmark/benchmark.h>

#include "fluidaoi/analytic.hpp"
#include "fluidaoi/optimize.hpp"
#include "fluidaoi/simulator.hpp"
#include "fluidaoi/stationary.hpp"

namespace {

using namespace fluidaoi;

void BM_MeanAoiClosedForm(benchmark::State& state) {
  const auto p = ModelParams::make({1.0, 2.0, 1.5, 1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(mean_aoi_inf_inf(p));
}
BENCHMARK(BM_MeanAoiClosedForm);

void BM_StationarySolver(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = ModelParams::make({1.0, 1.0, 0.8, 1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(mean_peak_aoi_finite(n, p).mean_peak_aoi);
}
BENCHMARK(BM_StationarySolver)->RangeMultiplier(2)->Range(1, 32);

void BM_OptimalLambda(benchmark::State& state) {
  const auto p = ModelParams::make({0.5, 1.0, 2.0 / 3.0, 1.0, 4.0});
  for (auto _ : state) benchmark::DoNotOptimize(find_optimal_lambda(p, 0.201, 0.666, Metric::MeanAoi));
}
BENCHMARK(BM_OptimalLambda)->Unit(benchmark::kMillisecond);

// Simulated time units per second of wall clock, single replication.
void BM_SimulatorThroughput(benchmark::State& state) {
  const SimConfig config{.params = ModelParams::make({1.0, 1.5, 1.1, 1.0, 1.0}, std::nullopt, 2.0),
                         .horizon = 1e5,
                         .warmup = 1e4,
                         .replications = 1,
                         .seed = 3,
                         .initial_level = std::nullopt,
                         .record_trace = false,
                         .threads = 1};
  for (auto _ : state) benchmark::DoNotOptimize(run_replication(config, 0).mean_peak_aoi);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(config.horizon));
}
BENCHMARK(BM_SimulatorThroughput)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
