#include "dmoc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dmoc/metric.hpp"

namespace dmoc {

PointSet fibonacci_lattice(std::size_t n) {
  if (n == 0) throw std::invalid_argument("fibonacci_lattice: n must be >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<double> coords;
  coords.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden_angle * static_cast<double>(i);
    double x = r * std::cos(theta), y = r * std::sin(theta), zz = z;
    const double norm = std::sqrt(x * x + y * y + zz * zz);
    coords.push_back(x / norm);
    coords.push_back(y / norm);
    coords.push_back(zz / norm);
  }
  return PointSet(std::move(coords), 3, Metric::great_circle());
}

std::vector<double> sample_wiener(std::span<const double> times, Rng& rng) {
  std::vector<double> w(times.size());
  double prev_t = 0.0, prev_w = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= prev_t)
      throw std::invalid_argument(
          "sample_wiener: times must be strictly increasing and positive");
    prev_w += std::sqrt(times[i] - prev_t) * rng.normal();
    prev_t = times[i];
    w[i] = prev_w;
  }
  return w;
}

WienerSampler::WienerSampler(std::vector<double> times)
    : times_(std::move(times)) {
  double prev = 0.0;
  for (double t : times_) {
    if (t <= prev)
      throw std::invalid_argument(
          "WienerSampler: times must be strictly increasing and positive");
    prev = t;
  }
}

std::vector<double> WienerSampler::sample(std::span<const std::size_t> sites,
                                          Rng& rng) const {
  std::vector<double> picked(sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    if (sites[s] >= times_.size() || (s > 0 && sites[s] <= sites[s - 1]))
      throw std::invalid_argument("WienerSampler: sites must be sorted and in range");
    picked[s] = times_[sites[s]];
  }
  return sample_wiener(picked, rng);
}

GaussianFieldSpec::GaussianFieldSpec(CovarianceKind kind, PointSet sites,
                                     std::size_t dense_cap)
    : kind_(kind), sites_(std::move(sites)) {
  const std::size_t n = sites_.size();
  if (n == 0) throw std::invalid_argument("GaussianFieldSpec: empty site set");
  if (n > dense_cap)
    throw std::invalid_argument("GaussianFieldSpec: site count exceeds dense cap");
  if (kind_ == CovarianceKind::WienerMin && sites_.dim() != 1)
    throw std::invalid_argument("GaussianFieldSpec: min-covariance needs 1-D sites");
  if (kind_ == CovarianceKind::SphereExponential &&
      sites_.metric().kind() != MetricKind::GreatCircle)
    throw std::invalid_argument("GaussianFieldSpec: sphere covariance needs sphere sites");

  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double kij = 0.0;
      if (kind_ == CovarianceKind::WienerMin) {
        const double s = sites_.point(i)[0], t = sites_.point(j)[0];
        if (s <= 0.0 || t <= 0.0)
          throw std::invalid_argument("GaussianFieldSpec: min-covariance needs positive times");
        kij = std::min(s, t);
      } else {
        kij = std::exp(-4.0 * sites_.distance(i, j));
      }
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kij;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = kij;
    }

  const double mean_diag = cov.diagonal().mean();
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  for (double scale : {0.0, 1e-14, 1e-12, 1e-10}) {
    jitter = scale * mean_diag;
    Eigen::MatrixXd shifted = cov;
    shifted.diagonal().array() += jitter;
    llt.compute(shifted);
    if (llt.info() == Eigen::Success) break;
  }
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("GaussianFieldSpec: covariance is not positive definite");
  jitter_used_ = jitter;

  Eigen::MatrixXd L = llt.matrixL();
  chol_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      chol_[i * n + j] = L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<double> GaussianFieldSpec::sample(Rng& rng) const {
  const std::size_t n = sites_.size();
  std::vector<double> z(n), y(n, 0.0);
  for (auto& v : z) v = rng.normal();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * n + j] * z[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> sample_sphere_field(const GaussianFieldSpec& spec,
                                        Rng& rng) {
  if (spec.kind() != CovarianceKind::SphereExponential)
    throw std::invalid_argument("sample_sphere_field: wrong covariance kind");
  return spec.sample(rng);
}

SubsetGaussianSampler::SubsetGaussianSampler(CovarianceKind kind,
                                             PointSet sites,
                                             std::size_t dense_cap)
    : kind_(kind), sites_(std::move(sites)), dense_cap_(dense_cap) {}

std::vector<double> SubsetGaussianSampler::sample(
    std::span<const std::size_t> sites, Rng& rng) const {
  std::vector<std::size_t> key(sites.begin(), sites.end());
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto spec = std::make_shared<GaussianFieldSpec>(
        kind_, sites_.subset(sites), dense_cap_);
    it = cache_.emplace(std::move(key), std::move(spec)).first;
  }
  return it->second->sample(rng);
}

LabeledDataset nonhoelder_sphere(const PointSet& ps,
                                 std::span<const double> x0) {
  if (ps.metric().kind() != MetricKind::GreatCircle || x0.size() != 3)
    throw std::invalid_argument("nonhoelder_sphere: needs sphere sites and an R^3 pole");
  std::vector<double> values(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double d = great_circle_distance(ps.point(i), x0);
    values[i] = d == 0.0 ? 0.0 : 1.0 / std::abs(std::log(d / kPi) - 2.0);
  }
  return LabeledDataset(ps, PointSet::from_1d(std::move(values)));
}

double nonhoelder_1d(double x) {
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("nonhoelder_1d: x must be in [0, 1]");
  if (x == 0.0) return 0.0;
  return 1.0 / std::abs(std::log(x) - 2.0);
}

double nonhoelder_1d_modulus(double t) {
  if (t < 0.0) throw std::domain_error("nonhoelder_1d_modulus: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (t >= 1.0) return 0.5;
  return 1.0 / std::abs(std::log(t) - 2.0);
}

}  // namespace dmoc
