#pragma once

#include <functional>
#include <span>
#include <string>

namespace dmoc {

enum class MetricKind {
  AbsDiff1d,    // |x - y| on the real line
  Euclidean,    // l2 distance in R^k
  GreatCircle,  // geodesic distance on the unit sphere embedded in R^3
  Callback,     // user-supplied distance
};

using DistanceFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

// Distance between two coordinate vectors. Metric axioms are assumed for
// user callbacks and spot-checked in tests only; they are never enforced at
// call time.
class Metric {
 public:
  static Metric abs_diff_1d() { return Metric(MetricKind::AbsDiff1d); }
  static Metric euclidean() { return Metric(MetricKind::Euclidean); }
  static Metric great_circle() { return Metric(MetricKind::GreatCircle); }
  static Metric callback(DistanceFn fn);

  MetricKind kind() const { return kind_; }

  double operator()(std::span<const double> a, std::span<const double> b) const;

  // true if points carry an R^k coordinate embedding with axis-aligned
  // bounding boxes compatible with Euclidean pruning
  bool has_embedding() const { return kind_ != MetricKind::Callback; }

 private:
  explicit Metric(MetricKind kind) : kind_(kind) {}

  MetricKind kind_;
  DistanceFn fn_;
};

// geodesic distance on the unit sphere, atan2(|x cross y|, x dot y);
// stable near 0 and pi
double great_circle_distance(std::span<const double> a, std::span<const double> b);

std::string to_string(MetricKind kind);

}  // namespace dmoc
