// Serial reference vs OpenMP Gamma scan, plus the single-IVP cost that
// dominates both.

#include <benchmark/benchmark.h>

#include "itm/scan.hpp"

namespace {

void BM_GammaEvaluation(benchmark::State& state) {
    const itm::ItmConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(itm::evaluate_gamma_at(2.5, config));
}
BENCHMARK(BM_GammaEvaluation)->Unit(benchmark::kMicrosecond);

void BM_GammaEvaluationWithDerivative(benchmark::State& state) {
    const itm::ItmConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(itm::evaluate_gamma_with_derivative(2.5, config));
}
BENCHMARK(BM_GammaEvaluationWithDerivative)->Unit(benchmark::kMicrosecond);

itm::ScanGrid grid_of(const benchmark::State& state) {
    return {0.5, 20.0, static_cast<int>(state.range(0)), itm::Spacing::linear};
}

void BM_ScanSerial(benchmark::State& state) {
    const itm::ItmConfig config;
    const auto grid = grid_of(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(itm::scan_serial(grid, itm::SecondDerivativeSign::minus, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanSerial)->Arg(40)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ScanParallel(benchmark::State& state) {
    const itm::ItmConfig config;
    const auto grid = grid_of(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(itm::scan_parallel(grid, itm::SecondDerivativeSign::minus, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanParallel)->Arg(40)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
