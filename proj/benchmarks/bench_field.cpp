#include <benchmark/benchmark.h>

#include "wavedecay/field.hpp"

using namespace wavedecay;

namespace {

ScalarField random_field(const Grid2D& g, unsigned seed)
{
    ScalarField f = make_field(g);
    unsigned s = seed;
    for (long i = 0; i < g.size(); ++i) {
        s = s * 1664525u + 1013904223u;
        f.v[i] = (s >> 8) * (1.0 / (1u << 24)) - 0.5;
    }
    return f;
}

} // namespace

static void BM_DivKGrad(benchmark::State& state)
{
    const Grid2D g = make_grid(2 * static_cast<int>(state.range(0)) + 1, 0.05);
    const ScalarField K = sample_field(g, [](double, double) { return 1.5; });
    const ScalarField u = random_field(g, 7);
    for (auto _ : state) {
        ScalarField out = div_k_grad(K, u);
        benchmark::DoNotOptimize(out.v.data());
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_DivKGrad)->Arg(256)->Arg(1024);

static void BM_Gradient(benchmark::State& state)
{
    const Grid2D g = make_grid(2 * static_cast<int>(state.range(0)) + 1, 0.05);
    const ScalarField u = random_field(g, 11);
    for (auto _ : state) {
        Gradient out = gradient(u);
        benchmark::DoNotOptimize(out.d1.v.data());
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_Gradient)->Arg(256)->Arg(1024);

static void BM_IntegrateDisc(benchmark::State& state)
{
    const Grid2D g = make_grid(2 * static_cast<int>(state.range(0)) + 1, 0.05);
    const ScalarField u = random_field(g, 13);
    const std::vector<double> frac = region_fractions(g, Region::disc(0.4 * g.half_width()));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(u, frac));
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_IntegrateDisc)->Arg(256)->Arg(1024);
