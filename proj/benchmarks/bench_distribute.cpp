#include "plexdist/distribute.hpp"
#include "plexdist/meshgen.hpp"
#include "plexdist/overlap.hpp"

#include <benchmark/benchmark.h>

using namespace plexdist;

static void BM_GenBox3D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_box_3d(n));
  state.SetItemsProcessed(state.iterations() * 6 * n * n * n);
}
BENCHMARK(BM_GenBox3D)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Distribute(benchmark::State& state) {
  const auto mesh = gen_box_3d(static_cast<int>(state.range(0)));
  const int ranks = static_cast<int>(state.range(1));
  for (auto _ : state) {
    CommWorld world(ranks);
    benchmark::DoNotOptimize(distribute(world, mesh, ChunkPartitioner{}));
  }
}
BENCHMARK(BM_Distribute)->Args({8, 2})->Args({8, 8})->Args({16, 8})->Unit(benchmark::kMillisecond);

static void BM_Overlap(benchmark::State& state) {
  const auto mesh = gen_box_3d(8);
  CommWorld setup(4);
  const auto base = distribute(setup, mesh, GreedyBfsPartitioner{});
  const auto kind = state.range(0) ? Adjacency::kFE : Adjacency::kFV;
  for (auto _ : state) {
    CommWorld world(4);
    benchmark::DoNotOptimize(distribute_overlap(world, base, 1, kind));
  }
}
BENCHMARK(BM_Overlap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Redistribute(benchmark::State& state) {
  const auto mesh = gen_box_3d(8);
  CommWorld setup(4);
  const auto base = distribute(setup, mesh, RandomPartitioner(1));
  for (auto _ : state) {
    CommWorld world(4);
    benchmark::DoNotOptimize(redistribute(world, base, GreedyBfsPartitioner{}));
  }
}
BENCHMARK(BM_Redistribute)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
