#include <benchmark/benchmark.h>

#include <numbers>

#include "entswap/ensemble.hpp"
#include "entswap/protocol.hpp"

using namespace entswap;

static void BM_SwapClosedForm(benchmark::State& state) {
    const PhaseAngle theta(std::numbers::pi / 6);
    for (auto _ : state) benchmark::DoNotOptimize(swap_closed_form(theta));
}
BENCHMARK(BM_SwapClosedForm);

static void BM_SwapGeneral(benchmark::State& state) {
    const PhaseAngle a(0.3), b(1.1);
    for (auto _ : state) benchmark::DoNotOptimize(swap_general(a, b));
}
BENCHMARK(BM_SwapGeneral);

static void BM_SwapOracle(benchmark::State& state) {
    const PhaseAngle a(0.3), b(1.1);
    for (auto _ : state) benchmark::DoNotOptimize(swap_oracle(a, b));
}
BENCHMARK(BM_SwapOracle);

static void BM_CascadeExact(benchmark::State& state) {
    const PhaseAngle theta(0.2);
    for (auto _ : state) benchmark::DoNotOptimize(cascade_exact(theta, 40, 1e-9));
}
BENCHMARK(BM_CascadeExact);

static void BM_SampleSwap(benchmark::State& state) {
    const EnsembleConfig config{PhaseAngle(std::numbers::pi / 6), PhaseAngle(std::numbers::pi / 6),
                                static_cast<std::uint64_t>(state.range(0)), 1, BsmMode::Full,
                                static_cast<unsigned>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(sample_swap(config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSwap)
    ->Args({100000, 1})
    ->Args({100000, 4})
    ->Args({1000000, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

static void BM_CascadeSampled(benchmark::State& state) {
    const PhaseAngle theta(std::numbers::pi / 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cascade_sampled(theta, static_cast<std::uint64_t>(state.range(0)), 1, 10,
                                                 static_cast<unsigned>(state.range(1))));
    }
}
BENCHMARK(BM_CascadeSampled)->Args({1000000, 1})->Args({1000000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
