#include <benchmark/benchmark.h>

#include "wavedecay/initial_data.hpp"
#include "wavedecay/potential.hpp"

using namespace wavedecay;

static void BM_PotentialFarField(benchmark::State& state)
{
    const int m = static_cast<int>(1.2 / 0.05);
    const Grid2D g = make_grid(2 * m + 1, 0.05);
    const InitialData d = make_dataset({"bump-velocity", 1.0, 1.0}, g);
    const std::vector<Point> pts = farfield_sample_points(1.0);
    for (auto _ : state) {
        PotentialValues v = evaluate_potential(d.u1, pts);
        benchmark::DoNotOptimize(v.grad.data());
    }
    state.SetItemsProcessed(state.iterations() * pts.size());
}
BENCHMARK(BM_PotentialFarField);

static void BM_AnnulusGradSq(benchmark::State& state)
{
    const int m = static_cast<int>(1.2 / 0.05);
    const Grid2D g = make_grid(2 * m + 1, 0.05);
    const InitialData d = make_dataset({"bump-velocity", 1.0, 1.0}, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(annulus_grad_sq(d.u1, 2.0, 50.0));
}
BENCHMARK(BM_AnnulusGradSq);
