#include <benchmark/benchmark.h>

#include "deltasolve/dispersive.hpp"
#include "deltasolve/propagator.hpp"
#include "deltasolve/specialfn.hpp"
#include "deltasolve/spectrum.hpp"

using namespace deltasolve;

namespace {

InitialData datum() {
    InitialData f;
    f.add(GaussianTerm{1.0, {0, 0, 1}, 0.1});
    return f;
}

const InteractionConfig kChain({{0, 0, -1}, {0, 0, 0}, {0, 0, 1}}, {0.5, -0.3, 0.5});

}  // namespace

static void BM_Faddeeva(benchmark::State& state) {
    cplx z(0.3, 0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(faddeeva(z));
        z += cplx(1e-3, 0.0);
    }
}
BENCHMARK(BM_Faddeeva);

static void BM_FindEigenvalues(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(find_eigenvalues(kChain));
}
BENCHMARK(BM_FindEigenvalues)->Unit(benchmark::kMicrosecond);

static void BM_SpectralTransformBuild(benchmark::State& state) {
    const auto f = datum();
    for (auto _ : state) {
        SpectralTransform tr(kChain, f, CutoffSpec{static_cast<double>(state.range(0))}, 1.0, 60.0);
        benchmark::DoNotOptimize(tr.dual_size());
    }
}
BENCHMARK(BM_SpectralTransformBuild)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SpectralEvaluate(benchmark::State& state) {
    const auto f = datum();
    const SpectralTransform tr(kChain, f, CutoffSpec{16.0}, 1.0, 60.0);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tr.evolve({2.0, 1.0, 0.5}, t));
}
BENCHMARK(BM_SpectralEvaluate)->Arg(1)->Arg(20)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_ClosedFormEvaluate(benchmark::State& state) {
    const InteractionConfig one({{0, 0, 0}}, {1.0});
    const auto f = datum();
    for (auto _ : state) benchmark::DoNotOptimize(n1_evolve(one, f, {2.0, 1.0, 0.5}, 5.0));
}
BENCHMARK(BM_ClosedFormEvaluate)->Unit(benchmark::kMicrosecond);

static void BM_DecayScanChain(benchmark::State& state) {
    const auto f = datum();
    EvolveOptions opts;
    opts.continuous_only = true;
    opts.spectral.tol = 1e-4;
    SampleGrid grid;
    grid.radii = 8;
    grid.box = 3;
    for (auto _ : state) benchmark::DoNotOptimize(decay_scan(kChain, f, log_times(1.0, 200.0, 8), grid, opts));
}
BENCHMARK(BM_DecayScanChain)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
