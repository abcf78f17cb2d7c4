#include "varimin/descent.hpp"
#include "varimin/mesh_energy.hpp"
#include "varimin/shapes.hpp"

#include <benchmark/benchmark.h>

using namespace varimin;

static void BM_EnergyValue(benchmark::State& state) {
    SimplicialMesh m = icosphere(static_cast<int>(state.range(0)));
    MeshEnergy E(m, EnergySpec{});
    for (auto _ : state) benchmark::DoNotOptimize(E.value(m.vertices()));
    state.SetItemsProcessed(state.iterations() * m.num_vertices());
}
BENCHMARK(BM_EnergyValue)->DenseRange(3, 5);

static void BM_EnergyGradient(benchmark::State& state) {
    SimplicialMesh m = icosphere(static_cast<int>(state.range(0)));
    EnergySpec spec;
    spec.form = state.range(1) ? EnergyForm::A : EnergyForm::H;
    MeshEnergy E(m, spec);
    Mat G;
    for (auto _ : state) benchmark::DoNotOptimize(E.value_and_gradient(m.vertices(), G));
    state.SetItemsProcessed(state.iterations() * m.num_vertices());
}
BENCHMARK(BM_EnergyGradient)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_EllipsoidDescent(benchmark::State& state) {
    SimplicialMesh m = ellipsoid(3, 1.0, 1.0, 0.5);
    CompactSubset ball = CompactSubset::ball(make_euclidean(3), 1.0);
    DescentOptions o;
    o.max_iter = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(minimize(m, EnergySpec{}, ball, o));
}
BENCHMARK(BM_EllipsoidDescent)->Arg(10)->Unit(benchmark::kMillisecond);
