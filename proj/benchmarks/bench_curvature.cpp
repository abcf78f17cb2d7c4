#include "varimin/curvature_recovery.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/monitors.hpp"
#include "varimin/monotonicity.hpp"
#include "varimin/shapes.hpp"

#include <benchmark/benchmark.h>

using namespace varimin;

static void BM_MeshCurvature(benchmark::State& state) {
    DiscreteVarifold V = varifold_from_mesh(icosphere(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(mean_curvature_mesh(V));
    state.SetItemsProcessed(state.iterations() * V.size());
}
BENCHMARK(BM_MeshCurvature)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_KernelCurvature(benchmark::State& state) {
    DiscreteVarifold V = varifold_from_mesh(icosphere(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(mean_curvature_kernel(V, 0.15));
    state.SetItemsProcessed(state.iterations() * V.size());
}
BENCHMARK(BM_KernelCurvature)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_RecoverB(benchmark::State& state) {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    const double eps = static_cast<double>(state.range(0)) / 100.0;
    TestScalarDictionary dict(3, eps);
    for (auto _ : state) benchmark::DoNotOptimize(recover_B(V, eps, dict));
    state.SetItemsProcessed(state.iterations() * V.size());
}
BENCHMARK(BM_RecoverB)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_Hausdorff(benchmark::State& state) {
    Mat a = varifold_from_mesh(icosphere(4)).points();
    Mat b = varifold_from_mesh(icosphere(5)).points();
    for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b));
}
BENCHMARK(BM_Hausdorff)->Unit(benchmark::kMillisecond);

static void BM_CheckBounds(benchmark::State& state) {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    CurvatureField H = mean_curvature_mesh(V);
    for (auto _ : state) benchmark::DoNotOptimize(check_bounds(V, H, 3.0));
}
BENCHMARK(BM_CheckBounds)->Unit(benchmark::kMillisecond);
