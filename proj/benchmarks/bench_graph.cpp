#include <benchmark/benchmark.h>

#include "qgraph/graph.hpp"
#include "qgraph/random_tree.hpp"

using namespace qgraph;

static void BM_BuildRandomTree(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MetricGraph g = random_tree(42, n, 0.2, 2.0);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_BuildRandomTree)->Arg(16)->Arg(64)->Arg(256);

static void BM_Diameter(benchmark::State& state) {
  MetricGraph g = random_tree(42, static_cast<int>(state.range(0)), 0.2, 2.0);
  for (auto _ : state) {
    Diameter d = diameter(g);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Diameter)->Arg(16)->Arg(64)->Arg(256);

static void BM_VertexDistances(benchmark::State& state) {
  MetricGraph g = random_tree(7, static_cast<int>(state.range(0)), 0.2, 2.0);
  for (auto _ : state) {
    auto d = vertex_distances(g, 0);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_VertexDistances)->Arg(16)->Arg(64)->Arg(256);

static void BM_CanonicalCode(benchmark::State& state) {
  MetricGraph g = random_tree(7, static_cast<int>(state.range(0)), 0.2, 2.0);
  for (auto _ : state) {
    auto c = canonical_tree_code(g);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CanonicalCode)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
