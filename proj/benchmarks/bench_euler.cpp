#include "euler/io.hpp"
#include "euler/planner.hpp"
#include "euler/transform2d.hpp"
#include "euler/transform3d.hpp"

#include <benchmark/benchmark.h>

using namespace euler;

static void BM_Transform2dGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Complex2 k = std::get<Complex2>(generate_mesh({.kind = "square-grid", .nx = n, .ny = n}));
  for (auto _ : state) benchmark::DoNotOptimize(euler_transform_2d(k));
  state.SetComplexityN(static_cast<int64_t>(k.interior_faces().size()));
}
BENCHMARK(BM_Transform2dGrid)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Transform3dBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Complex3 k = std::get<Complex3>(generate_mesh({.kind = "cubical-block", .nx = n, .ny = n, .nz = n}));
  for (auto _ : state) benchmark::DoNotOptimize(euler_transform_3d(k));
}
BENCHMARK(BM_Transform3dBlock)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static SkeletonGraph grid_skeleton(int n) {
  const Complex2 k = std::get<Complex2>(generate_mesh({.kind = "square-grid", .nx = n, .ny = n}));
  return skeleton_graph(euler_transform_2d(k).complex);
}

static void BM_EulerianTour(benchmark::State& state) {
  const SkeletonGraph g = grid_skeleton(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eulerian_tour(g));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_EulerianTour)->Arg(16)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_GreedyTour(benchmark::State& state) {
  const SkeletonGraph g = grid_skeleton(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_min_turn_tour(g));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_GreedyTour)->Arg(16)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_BuildLayers(benchmark::State& state) {
  const Complex2 k = std::get<Complex2>(generate_mesh({.kind = "square-grid", .nx = 24, .ny = 24}));
  const TransformedComplex2 t = euler_transform_2d(k);
  const auto domains = shrinking_square_domains(Vec2(12, 12), 24, 4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_layers(t, domains, 0.5));
}
BENCHMARK(BM_BuildLayers)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
