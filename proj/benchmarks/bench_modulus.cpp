#include <benchmark/benchmark.h>

#include <vector>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/covering.hpp"
#include "dmoc/datagen.hpp"
#include "dmoc/modulus.hpp"
#include "dmoc/rng.hpp"
#include "dmoc/sketch.hpp"

namespace {

using namespace dmoc;

LabeledDataset wiener_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> times(n);
  for (auto& t : times) t = rng.uniform();
  std::sort(times.begin(), times.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (times[i] <= 0.0) times[i] = 1e-12;
    if (i > 0 && times[i] <= times[i - 1])
      times[i] = std::nextafter(times[i - 1], 2.0);
  }
  auto values = sample_wiener(times, rng);
  return LabeledDataset(PointSet::from_1d(std::move(times)),
                        PointSet::from_1d(std::move(values)));
}

void bm_modulus_at(benchmark::State& state) {
  auto ds = wiener_dataset(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(modulus_at(ds, 0.01));
}
BENCHMARK(bm_modulus_at)->Arg(1000)->Arg(4000)->Arg(16000);

void bm_modulus_at_threaded(benchmark::State& state) {
  auto ds = wiener_dataset(16000, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        modulus_at(ds, 0.01, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(bm_modulus_at_threaded)->Arg(1)->Arg(2)->Arg(4);

void bm_modulus_at_range(benchmark::State& state) {
  auto ds = wiener_dataset(static_cast<std::size_t>(state.range(0)), 1);
  ClusterTree tree(ds.sites(), 32);
  for (auto _ : state)
    benchmark::DoNotOptimize(modulus_at_range(ds, tree, 0.01));
}
BENCHMARK(bm_modulus_at_range)->Arg(1000)->Arg(4000)->Arg(16000);

void bm_tree_build(benchmark::State& state) {
  auto ds = wiener_dataset(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    ClusterTree tree(ds.sites(), 32);
    benchmark::DoNotOptimize(tree.depth());
  }
}
BENCHMARK(bm_tree_build)->Arg(1000)->Arg(16000);

void bm_greedy_cover(benchmark::State& state) {
  auto ds = wiener_dataset(static_cast<std::size_t>(state.range(0)), 1);
  ClusterTree tree(ds.sites(), 32);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_cover(ds.sites(), 0.01, &tree));
}
BENCHMARK(bm_greedy_cover)->Arg(1000)->Arg(4000);

void bm_sketch_build(benchmark::State& state) {
  auto ds = wiener_dataset(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_sketch(ds, 0.001, 2.0, 1.0));
}
BENCHMARK(bm_sketch_build)->Arg(1000)->Arg(4000);

void bm_sketch_eval(benchmark::State& state) {
  auto ds = wiener_dataset(4000, 1);
  auto sketch = build_sketch(ds, 0.001, 2.0, 1.0);
  std::vector<double> ts;
  for (int k = 1; k <= 50; ++k) ts.push_back(k / 50.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_sketch_many(sketch, ds, ts));
}
BENCHMARK(bm_sketch_eval);

}  // namespace

BENCHMARK_MAIN();
