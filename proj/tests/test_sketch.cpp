#include <doctest.h>

#include "dmoc/modulus.hpp"
#include "dmoc/sketch.hpp"
#include "helpers.hpp"

using namespace dmoc;

TEST_CASE("exact branch is bit-identical to the direct modulus") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto ds = testing::random_1d_dataset(300, seed);
    const double r = 0.05;
    auto sketch = build_sketch(ds, r, 2.0, 1.0);
    Rng rng(seed + 9);
    for (int k = 0; k < 30; ++k) {
      const double t = rng.uniform(0.0, r);
      CHECK(eval_sketch(sketch, ds, t) == modulus_at(ds, t));
    }
  }
}

TEST_CASE("sketch is a lower bound and a monotone envelope") {
  auto ds = testing::random_1d_dataset(400, 21);
  auto sketch = build_sketch(ds, 0.01, 2.0, 1.0);
  Rng rng(22);
  std::vector<double> ts;
  for (int k = 0; k < 100; ++k) ts.push_back(rng.uniform());
  auto vals = eval_sketch_many(sketch, ds, ts);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    CHECK(vals[k] <= modulus_at(ds, ts[k]));
    CHECK(vals[k] == eval_sketch(sketch, ds, ts[k]));  // batch == per-t
  }
  // running max over an increasing grid is nondecreasing by construction
  double prev = 0.0;
  for (double t = 0.0; t <= 1.0; t += 0.02) {
    const double v = std::max(prev, eval_sketch(sketch, ds, t));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("level structure") {
  auto ds = testing::random_1d_dataset(200, 4);
  auto sketch = build_sketch(ds, 1e-3, 2.0, 1.0);
  CHECK(sketch.level_count() == 10);  // ceil(log2(1000))
  // nested and shrinking site sets
  for (std::size_t k = 1; k < sketch.level_count(); ++k) {
    const auto& fine = sketch.levels()[k - 1].sites;
    const auto& coarse = sketch.levels()[k].sites;
    CHECK(coarse.size() <= fine.size());
    for (std::size_t s : coarse)
      CHECK(std::find(fine.begin(), fine.end(), s) != fine.end());
  }
  // r = T edge case: no levels, exact evaluation still works
  auto flat = build_sketch(ds, 1.0, 2.0, 1.0);
  CHECK(flat.level_count() == 0);
  CHECK(flat.extremal_injected() == false);
  CHECK(eval_sketch(flat, ds, 0.5) == modulus_at(ds, 0.5));
  CHECK_THROWS(eval_sketch(flat, ds, 1.5));  // beyond the horizon
}

TEST_CASE("extremal injection keeps the value range on every level") {
  auto ds = testing::random_1d_dataset(300, 8);
  auto sketch = build_sketch(ds, 0.01, 2.0, 1.0, true);
  CHECK(sketch.extremal_injected());
  // with the extremal pair present, the coarsest level still sees the full
  // spread once the coarsening radius covers their site distance
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    lo = std::min(lo, ds.values().point(i)[0]);
    hi = std::max(hi, ds.values().point(i)[0]);
  }
  for (const auto& level : sketch.levels()) {
    bool has_lo = false, has_hi = false;
    for (std::size_t s : level.sites) {
      if (ds.values().point(s)[0] == lo) has_lo = true;
      if (ds.values().point(s)[0] == hi) has_hi = true;
    }
    CHECK(has_lo);
    CHECK(has_hi);
  }
  // only 1-D values are supported
  PointSet sites3 = testing::random_points(10, 2, 1);
  PointSet values3 = testing::random_points(10, 2, 2);
  LabeledDataset ds3(sites3, values3);
  CHECK_THROWS(build_sketch(ds3, 0.1, 2.0, 1.0, true));
}

TEST_CASE("save and load reproduce evaluations exactly") {
  auto ds = testing::random_1d_dataset(250, 33);
  auto sketch = build_sketch(ds, 0.02, 2.0, 1.0);
  const auto dir = testing::temp_path("dmoc_sketch_dir");
  sketch.save(dir);
  auto loaded = ModulusSketch::load(dir, ds);
  Rng rng(34);
  for (int k = 0; k < 50; ++k) {
    const double t = rng.uniform();
    CHECK(eval_sketch(loaded, ds, t) == eval_sketch(sketch, ds, t));
  }
}

TEST_CASE("build validation") {
  auto ds = testing::random_1d_dataset(10, 0);
  CHECK_THROWS(build_sketch(ds, -1.0, 2.0, 1.0));
  CHECK_THROWS(build_sketch(ds, 0.1, 1.0, 1.0));  // R must exceed 1
  CHECK_THROWS(build_sketch(ds, 0.5, 2.0, 0.1));  // r > T
}
