// Microbenchmarks for the FFT-dominated hot paths.

#include <benchmark/benchmark.h>

#include <cmath>

#include "hns/gronwall.hpp"
#include "hns/initial_data.hpp"
#include "hns/operators.hpp"
#include "hns/solver.hpp"
#include "hns/transform.hpp"

using namespace hns;

namespace {

SpectralField band_field(int d, int n) {
    auto lat = make_lattice(d, n, 2.0 * M_PI);
    return random_band(lat, 1.0, n / 6.0, 1.0, 99);
}

void BM_transform_roundtrip_2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = band_field(2, n);
    for (auto _ : state) {
        auto u = inverse_transform(f);
        benchmark::DoNotOptimize(forward_transform(u));
    }
}
BENCHMARK(BM_transform_roundtrip_2d)->Arg(64)->Arg(128)->Arg(256);

void BM_transform_roundtrip_3d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = band_field(3, n);
    for (auto _ : state) {
        auto u = inverse_transform(f);
        benchmark::DoNotOptimize(forward_transform(u));
    }
}
BENCHMARK(BM_transform_roundtrip_3d)->Arg(16)->Arg(32)->Arg(64);

void BM_nonlinear_term_3d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = band_field(3, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(nonlinear_term(f, DealiasRule::TwoThirds));
}
BENCHMARK(BM_nonlinear_term_3d)->Arg(16)->Arg(32)->Arg(64);

void BM_solver_step_3d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SimConfig cfg;
    cfg.d = 3;
    cfg.n = n;
    cfg.dt = 1e-4;
    cfg.t_end = 1.0;
    cfg.symbol = symbol_log_supercritical(3);
    auto lat = make_lattice(3, n, 2.0 * M_PI);
    Stepper stepper(lat, cfg);
    SolverState st;
    st.u = band_field(3, n);
    for (auto _ : state) stepper.advance(st);
}
BENCHMARK(BM_solver_step_3d)->Arg(16)->Arg(32)->Arg(64);

void BM_leray_project(benchmark::State& state) {
    auto f = band_field(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(leray_project(f));
}
BENCHMARK(BM_leray_project)->Arg(32)->Arg(64);

void BM_criterion_integral(benchmark::State& state) {
    auto g = growth_log_quarter();
    for (auto _ : state)
        benchmark::DoNotOptimize(criterion_integral(g, 4, 1e12));
}
BENCHMARK(BM_criterion_integral);

} // namespace

BENCHMARK_MAIN();
