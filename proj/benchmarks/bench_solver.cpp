#include <benchmark/benchmark.h>

#include "wavedecay/diagnostics.hpp"
#include "wavedecay/solver.hpp"

using namespace wavedecay;

static void BM_LeapfrogStep(benchmark::State& state)
{
    const Grid2D g = make_grid(2 * static_cast<int>(state.range(0)) + 1, 0.05);
    const CoefficientField K = make_radial_decreasing(1.44, 1.0, 1.5, g);
    const InitialData d = make_dataset({"bump-velocity", 1.0, 1.0}, g);
    const double dt = cfl_timestep(g.dx, K.k1(), 0.5);
    WaveState s = first_step(d, K, dt);
    for (auto _ : state)
        step(s, K, dt);
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_LeapfrogStep)->Arg(256)->Arg(1024);

static void BM_SamplerPass(benchmark::State& state)
{
    const Grid2D g = make_grid(2 * static_cast<int>(state.range(0)) + 1, 0.05);
    const CoefficientField K = make_radial_decreasing(1.44, 1.0, 1.5, g);
    const InitialData d = make_dataset({"bump-velocity", 1.0, 1.0}, g);
    const double dt = cfl_timestep(g.dx, K.k1(), 0.5);
    WaveState s = first_step(d, K, dt);
    step(s, K, dt);
    for (auto _ : state) {
        Sampler sampler(K, d, 2.0);
        sampler.on_sample(s, dt);
        benchmark::DoNotOptimize(sampler.series().points.data());
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_SamplerPass)->Arg(256);
