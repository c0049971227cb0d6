#include <benchmark/benchmark.h>

#include "tamedns/integrator.hpp"
#include "tamedns/operators.hpp"
#include "tamedns/transform.hpp"

namespace {

tns::SpectralField make_field(const tns::TorusGrid& grid) {
    return tns::random_div_free_field(grid, 7, 1.0);
}

void BM_transform_roundtrip(benchmark::State& state) {
    tns::TorusGrid grid(int(state.range(0)));
    tns::SpectralField u = make_field(grid);
    for (auto _ : state) {
        tns::PhysicalField p = tns::to_physical(u);
        tns::SpectralField back = tns::to_spectral(p, grid);
        benchmark::DoNotOptimize(back.data().data());
    }
}
BENCHMARK(BM_transform_roundtrip)->Arg(8)->Arg(16)->Arg(32);

void BM_convection(benchmark::State& state) {
    tns::TorusGrid grid(int(state.range(0)));
    tns::SpectralField u = make_field(grid);
    for (auto _ : state) {
        tns::SpectralField c = tns::convection(u);
        benchmark::DoNotOptimize(c.data().data());
    }
}
BENCHMARK(BM_convection)->Arg(8)->Arg(16)->Arg(32);

void BM_step(benchmark::State& state) {
    tns::TorusGrid grid(int(state.range(0)));
    tns::SpectralField u = make_field(grid);
    tns::CoefficientSet set;
    tns::SolverConfig cfg;
    std::vector<double> dW(1, 0.0);
    for (auto _ : state) {
        tns::SpectralField next = tns::step(u, 0.0, cfg.dt, dW, set, cfg);
        benchmark::DoNotOptimize(next.data().data());
    }
}
BENCHMARK(BM_step)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
