#include "dmoc/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace dmoc {

Metric Metric::callback(DistanceFn fn) {
  if (!fn) throw std::invalid_argument("Metric::callback: empty callback");
  Metric m(MetricKind::Callback);
  m.fn_ = std::move(fn);
  return m;
}

double great_circle_distance(std::span<const double> a,
                             std::span<const double> b) {
  const double cx = a[1] * b[2] - a[2] * b[1];
  const double cy = a[2] * b[0] - a[0] * b[2];
  const double cz = a[0] * b[1] - a[1] * b[0];
  const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::atan2(cross, dot);
}

double Metric::operator()(std::span<const double> a,
                          std::span<const double> b) const {
  if (a.size() != b.size())
    throw std::invalid_argument("Metric: dimension mismatch");
  switch (kind_) {
    case MetricKind::AbsDiff1d:
      return std::abs(a[0] - b[0]);
    case MetricKind::Euclidean: {
      double s = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::GreatCircle:
      if (a.size() != 3)
        throw std::invalid_argument("Metric: great-circle points live in R^3");
      return great_circle_distance(a, b);
    case MetricKind::Callback:
      return fn_(a, b);
  }
  throw std::logic_error("Metric: unknown kind");
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::AbsDiff1d: return "abs-diff-1d";
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::GreatCircle: return "great-circle";
    case MetricKind::Callback: return "callback";
  }
  return "?";
}

}  // namespace dmoc
