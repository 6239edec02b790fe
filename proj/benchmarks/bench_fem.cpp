#include <benchmark/benchmark.h>

#include "qgraph/fem.hpp"
#include "qgraph/random_tree.hpp"
#include "qgraph/star_path.hpp"

using namespace qgraph;

static void BM_FemInterval(benchmark::State& state) {
  MetricGraph g = build_graph(2, {{0, 1, 1.0}});
  double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto evs = fem_eigenvalues(g, h, 3);
    benchmark::DoNotOptimize(evs);
  }
}
BENCHMARK(BM_FemInterval)->Arg(250)->Arg(1000)->Arg(4000);

static void BM_FemJoined(benchmark::State& state) {
  MetricGraph g = build_star_path_family(0.05).joined;
  double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto evs = fem_eigenvalues(g, h, 2);
    benchmark::DoNotOptimize(evs);
  }
}
BENCHMARK(BM_FemJoined)->Arg(250)->Arg(1000);

static void BM_FemRandomTree(benchmark::State& state) {
  MetricGraph g = random_tree(5, 6, 0.2, 0.5);
  double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto evs = fem_eigenvalues(g, h, 6);
    benchmark::DoNotOptimize(evs);
  }
}
BENCHMARK(BM_FemRandomTree)->Arg(250)->Arg(1000);

static void BM_FemModesDense(benchmark::State& state) {
  MetricGraph g = build_graph(2, {{0, 1, 1.0}});
  double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto modes = fem_modes_dense(g, h, 3);
    benchmark::DoNotOptimize(modes);
  }
}
BENCHMARK(BM_FemModesDense)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
