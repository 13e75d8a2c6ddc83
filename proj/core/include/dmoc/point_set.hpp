#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "dmoc/metric.hpp"

namespace dmoc {

// Immutable finite point set with a metric. Coordinates are stored flat,
// point i occupying [i*dim, (i+1)*dim).
class PointSet {
 public:
  PointSet(std::vector<double> coords, std::size_t dim, Metric metric);

  static PointSet from_1d(std::vector<double> xs,
                          Metric metric = Metric::abs_diff_1d());

  std::size_t size() const { return coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  const Metric& metric() const { return metric_; }
  const std::vector<double>& coords() const { return coords_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }

  // d(x_i, x_j); distances are computed on demand, a dense matrix is only
  // held if cache_distances() was called and N <= the given cap
  double distance(std::size_t i, std::size_t j) const;

  // materialize the N x N distance matrix; no-op when size() > max_n
  void cache_distances(std::size_t max_n = 4096);

  PointSet subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<double> coords_;
  std::size_t dim_;
  Metric metric_;
  std::shared_ptr<const std::vector<double>> dist_cache_;  // row-major, optional
};

// sites x_i with metric d_X plus values y_i with metric d_Y; |sites|=|values|
class LabeledDataset {
 public:
  LabeledDataset(PointSet sites, PointSet values);

  std::size_t size() const { return sites_.size(); }
  const PointSet& sites() const { return sites_; }
  const PointSet& values() const { return values_; }

  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  PointSet sites_;
  PointSet values_;
};

double pairwise_distance(const PointSet& ps, std::size_t i, std::size_t j);

// min over i != j of d(x_i, x_j); requires at least two points
double separation_distance(const PointSet& ps);

// max over x in ambient of min over x_i in ps of d(x, x_i)
double fill_distance(const PointSet& ps, const PointSet& ambient);

// exact continuum fill distance of a 1-D point set against the interval
// [lo, hi] via midpoint/endpoint analysis
double fill_distance_interval(const PointSet& ps, double lo, double hi);

// max over pairs of d(x_i, x_j); 0 for a singleton
double diameter(const PointSet& ps);

// h/q quasi-uniformity ratio against a finite ambient set
double quasi_uniformity_ratio(const PointSet& ps, const PointSet& ambient);

}  // namespace dmoc
