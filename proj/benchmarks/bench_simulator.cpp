#include <benchmark/benchmark.h>

#include "atomsg/simulator.hpp"

using namespace atomsg;

namespace {

SimConfig bench_config(int nx, int nrho) {
    SimConfig cfg;
    cfg.cm_grid = {-8.0, 8.0, nx};
    cfg.r_grid = {-4.0, 4.0, nrho};
    cfg.mass_cm = 200.0;
    cfg.mass_r = 5.0;
    cfg.field_gradient = 4.0;
    cfg.omega_r = 1.0;
    cfg.packet_center = -1.0;
    cfg.packet_width = 0.8;
    cfg.dt = 0.004;
    cfg.total_time = 0.4;  // 100 steps per evolve
    cfg.snapshot_stride = 1 << 20;
    cfg.coupling.enabled = true;
    cfg.coupling.lambda = 1.0;
    cfg.coupling.offset = 3.5;
    cfg.coupling.source = CouplingSource::closed_form;
    cfg.coupling.Z = 10;
    return cfg;
}

} // namespace

static void BM_Evolve100Steps(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(cfg));
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Evolve100Steps)
    ->Args({64, 32})
    ->Args({128, 48})
    ->Args({256, 64})
    ->Unit(benchmark::kMillisecond);

static void BM_Reduce(benchmark::State& state) {
    auto cfg = bench_config(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)));
    const CompositeState st = initial_state(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reduce(st));
    }
}
BENCHMARK(BM_Reduce)->Args({64, 32})->Args({128, 48})->Unit(benchmark::kMillisecond);

static void BM_InitialState(benchmark::State& state) {
    auto cfg = bench_config(128, 48);
    for (auto _ : state) {
        benchmark::DoNotOptimize(initial_state(cfg));
    }
}
BENCHMARK(BM_InitialState)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
