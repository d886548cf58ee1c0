// Serial reference vs OpenMP kernels: Monte Carlo blocks and sweep grids.

#include <benchmark/benchmark.h>

#include "jamsurv/experiments.hpp"
#include "jamsurv/montecarlo.hpp"
#include "jamsurv/rates.hpp"

using namespace jamsurv;

namespace {

struct LinkSetup {
    ScenarioParams params;
    JammingStrategy strategy = JammingStrategy::equal_split(5, params.jam_budget);
    double rate = jammed_rate(params, strategy).rate;
};

void BM_BlocksReference(benchmark::State& state) {
    const LinkSetup s;
    const auto samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::simulate_blocks(s.params, s.strategy, s.rate, 7, samples, false));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BlocksParallel(benchmark::State& state) {
    const LinkSetup s;
    const SimulationConfig cfg{7, static_cast<std::uint64_t>(state.range(0)), Execution::parallel};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_blocks(s.params, s.strategy, s.rate, cfg, false));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PlacementGrid(benchmark::State& state) {
    SweepSpec spec = default_sweep(SweepKind::placement_grid);
    spec.execution = state.range(0) != 0 ? Execution::parallel : Execution::serial;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
    state.SetLabel(state.range(0) != 0 ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_BlocksReference)->Arg(1 << 18)->Arg(1 << 21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlocksParallel)->Arg(1 << 18)->Arg(1 << 21)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PlacementGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
