#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "dmoc/datagen.hpp"
#include "dmoc/point_set.hpp"
#include "dmoc/rng.hpp"

namespace dmoc::testing {

inline PointSet random_points(std::size_t n, std::size_t dim,
                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (auto& c : coords) c = rng.uniform();
  return PointSet(std::move(coords), dim,
                  dim == 1 ? Metric::abs_diff_1d() : Metric::euclidean());
}

inline PointSet random_sphere_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double x, y, z, s;
    do {
      x = rng.normal();
      y = rng.normal();
      z = rng.normal();
      s = std::sqrt(x * x + y * y + z * z);
    } while (s < 1e-6);
    coords.push_back(x / s);
    coords.push_back(y / s);
    coords.push_back(z / s);
  }
  return PointSet(std::move(coords), 3, Metric::great_circle());
}

inline LabeledDataset random_1d_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (auto& x : xs) x = rng.uniform();
  for (auto& y : ys) y = rng.uniform(-1.0, 1.0);
  return LabeledDataset(PointSet::from_1d(std::move(xs)),
                        PointSet::from_1d(std::move(ys)));
}

inline std::vector<std::size_t> brute_eps_neighbors(const PointSet& ps,
                                                    std::span<const double> x,
                                                    double eps) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps.metric()(x, ps.point(i)) <= eps) out.push_back(i);
  return out;
}

inline double brute_modulus(const LabeledDataset& ds, double t) {
  double best = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (ds.sites().metric()(ds.sites().point(i), ds.sites().point(j)) <= t)
        best = std::max(best, ds.values().metric()(ds.values().point(i),
                                                   ds.values().point(j)));
  return best;
}

inline std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

// Figure-style six-point examples used as hand-checked oracles
inline LabeledDataset six_point_f() {
  return LabeledDataset(PointSet::from_1d({1, 2, 3, 4, 5, 6}),
                        PointSet::from_1d({1, 3, 2, 5, 4, 6}));
}

inline LabeledDataset six_point_g() {
  return LabeledDataset(PointSet::from_1d({1, 2, 3, 4, 5, 6}),
                        PointSet::from_1d({3, 2, 3, 3, 4, 3}));
}

}  // namespace dmoc::testing
