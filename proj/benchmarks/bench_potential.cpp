#include <benchmark/benchmark.h>

#include "atomsg/gamma.hpp"
#include "atomsg/oracle.hpp"
#include "atomsg/potential.hpp"

using namespace atomsg;

namespace {
const UnitSystem u{};
} // namespace

static void BM_BuildCoefficients(benchmark::State& state) {
    const int z = closed_shell_z(static_cast<int>(state.range(0)));
    const ShellConfig shells = shells_for(z);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_coefficients(shells));
    }
}
BENCHMARK(BM_BuildCoefficients)->Arg(2)->Arg(6)->Arg(12);

static void BM_PotentialClosedForm(benchmark::State& state) {
    const int z = closed_shell_z(static_cast<int>(state.range(0)));
    const ShellConfig shells = shells_for(z);
    const CoefficientTable table = build_coefficients(shells);
    double omega = 0.0;
    for (auto _ : state) {
        omega += 0.1;
        if (omega > 50.0) omega = 0.1;
        benchmark::DoNotOptimize(potential_closed_form(z, table, omega, u));
    }
}
BENCHMARK(BM_PotentialClosedForm)->Arg(2)->Arg(6);

static void BM_RadialOracle(benchmark::State& state) {
    const int z = closed_shell_z(static_cast<int>(state.range(0)));
    const ShellConfig shells = shells_for(z);
    for (auto _ : state) {
        benchmark::DoNotOptimize(radial_oracle(z, shells, 2.0, u));
    }
}
BENCHMARK(BM_RadialOracle)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_LowerGamma(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.37;
        if (x > 80.0) x = 0.37;
        benchmark::DoNotOptimize(lower_gamma_int(static_cast<int>(state.range(0)), x));
    }
}
BENCHMARK(BM_LowerGamma)->Arg(4)->Arg(14);

static void BM_McOracle(benchmark::State& state) {
    const ShellConfig shells = shells_for(10);
    McConfig mc;
    mc.sample_count = state.range(0);
    mc.seed = 99;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_oracle(10, shells, {0.0, 0.0, 2.0}, u, mc));
    }
}
BENCHMARK(BM_McOracle)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
