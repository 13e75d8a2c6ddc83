#include "dmoc/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmoc {

PointSet::PointSet(std::vector<double> coords, std::size_t dim, Metric metric)
    : coords_(std::move(coords)), dim_(dim), metric_(std::move(metric)) {
  if (dim_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointSet: coordinate count not divisible by dim");
  if (metric_.kind() == MetricKind::GreatCircle) {
    if (dim_ != 3)
      throw std::invalid_argument("PointSet: great-circle points live in R^3");
    for (std::size_t i = 0; i < size(); ++i) {
      auto p = point(i);
      const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("PointSet: sphere point not unit norm");
    }
  }
}

PointSet PointSet::from_1d(std::vector<double> xs, Metric metric) {
  return PointSet(std::move(xs), 1, std::move(metric));
}

double PointSet::distance(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  if (i >= n || j >= n)
    throw std::out_of_range("PointSet::distance: index out of range");
  if (dist_cache_) return (*dist_cache_)[i * n + j];
  return metric_(point(i), point(j));
}

void PointSet::cache_distances(std::size_t max_n) {
  const std::size_t n = size();
  if (dist_cache_ || n > max_n) return;
  auto cache = std::make_shared<std::vector<double>>(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = metric_(point(i), point(j));
      (*cache)[i * n + j] = d;
      (*cache)[j * n + i] = d;
    }
  dist_cache_ = std::move(cache);
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    if (i >= size()) throw std::out_of_range("PointSet::subset: index out of range");
    auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointSet(std::move(coords), dim_, metric_);
}

LabeledDataset::LabeledDataset(PointSet sites, PointSet values)
    : sites_(std::move(sites)), values_(std::move(values)) {
  if (sites_.size() != values_.size())
    throw std::invalid_argument("LabeledDataset: site/value count mismatch");
  if (sites_.size() == 0)
    throw std::invalid_argument("LabeledDataset: empty dataset");
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  return LabeledDataset(sites_.subset(indices), values_.subset(indices));
}

double pairwise_distance(const PointSet& ps, std::size_t i, std::size_t j) {
  return ps.distance(i, j);
}

double separation_distance(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n < 2)
    throw std::invalid_argument("separation_distance: need at least 2 points");
  double q = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) q = std::min(q, ps.distance(i, j));
  return q;
}

double fill_distance(const PointSet& ps, const PointSet& ambient) {
  if (ps.size() == 0) throw std::invalid_argument("fill_distance: empty point set");
  const Metric& m = ps.metric();
  double h = 0.0;
  for (std::size_t a = 0; a < ambient.size(); ++a) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.size(); ++i)
      best = std::min(best, m(ambient.point(a), ps.point(i)));
    h = std::max(h, best);
  }
  return h;
}

double fill_distance_interval(const PointSet& ps, double lo, double hi) {
  if (ps.size() == 0)
    throw std::invalid_argument("fill_distance_interval: empty point set");
  if (ps.dim() != 1)
    throw std::invalid_argument("fill_distance_interval: 1-D point sets only");
  std::vector<double> xs(ps.coords());
  std::sort(xs.begin(), xs.end());
  // farthest ambient point is either an interval endpoint or a midpoint
  // between consecutive sites
  double h = std::max(std::abs(xs.front() - lo), std::abs(hi - xs.back()));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = std::max(lo, std::min(hi, xs[i]));
    const double b = std::max(lo, std::min(hi, xs[i + 1]));
    h = std::max(h, (b - a) / 2.0);
  }
  return h;
}

double diameter(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n == 0) throw std::invalid_argument("diameter: empty point set");
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t = std::max(t, ps.distance(i, j));
  return t;
}

double quasi_uniformity_ratio(const PointSet& ps, const PointSet& ambient) {
  return fill_distance(ps, ambient) / separation_distance(ps);
}

}  // namespace dmoc
