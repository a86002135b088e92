// Serial reference vs OpenMP kernels for the three data-parallel surfaces:
// exhaustive census, Monte Carlo estimation, and the pair-enumeration oracle.
#include <benchmark/benchmark.h>

#include "sumset/decompose.hpp"
#include "sumset/montecarlo.hpp"
#include "sumset/rng.hpp"

using namespace sumset;

static void BM_CensusSerial(benchmark::State& state) {
    SearchConfig cfg;
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(census_serial(n, cfg));
    }
}
BENCHMARK(BM_CensusSerial)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_CensusParallel(benchmark::State& state) {
    SearchConfig cfg;
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(census(n, cfg));
    }
}
BENCHMARK(BM_CensusParallel)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_EstimateEventSerial(benchmark::State& state) {
    const std::uint64_t trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_event_serial(51, 17, trials, 1));
    }
}
BENCHMARK(BM_EstimateEventSerial)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void BM_EstimateEventParallel(benchmark::State& state) {
    const std::uint64_t trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_event(51, 17, trials, 1));
    }
}
BENCHMARK(BM_EstimateEventParallel)
    ->Arg(10000)
    ->Arg(50000)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

static void BM_OracleSerial(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_decomposable_masks_serial(n, 2));
    }
}
BENCHMARK(BM_OracleSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_OracleParallel(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_decomposable_masks(n, 2));
    }
}
BENCHMARK(BM_OracleParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SumsetWindow(benchmark::State& state) {
    TrialRng rng(1, 0);
    const std::int64_t n = state.range(0);
    const SetWindow y = rng.random_window(n), z = rng.random_window(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sumset_window(y, z, n));
    }
}
BENCHMARK(BM_SumsetWindow)->Arg(64)->Arg(1024)->Arg(8192);

BENCHMARK_MAIN();
