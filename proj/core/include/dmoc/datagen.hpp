#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "dmoc/mlmc.hpp"
#include "dmoc/point_set.hpp"
#include "dmoc/rng.hpp"

namespace dmoc {

// golden-angle spiral points on the unit sphere
PointSet fibonacci_lattice(std::size_t n);

// Wiener path at strictly increasing positive times: cumulative sum of
// independent Gaussian increments with variance equal to the time gaps.
// Exact distribution, no discretization bias.
std::vector<double> sample_wiener(std::span<const double> times, Rng& rng);

// FieldSampler for the Wiener process over a fixed set of time sites
// (strictly increasing). Subsets are sampled exactly via their own
// increments, so marginals are consistent across levels.
class WienerSampler final : public FieldSampler {
 public:
  explicit WienerSampler(std::vector<double> times);
  std::vector<double> sample(std::span<const std::size_t> sites,
                             Rng& rng) const override;

  const std::vector<double>& times() const { return times_; }

 private:
  std::vector<double> times_;
};

enum class CovarianceKind {
  WienerMin,          // k(s, t) = min(s, t)
  SphereExponential,  // k(x, y) = exp(-4 d_geo(x, y))
};

// Dense symmetric factorization of the covariance at the given sites, with
// escalating diagonal jitter. Desk scale only (N <= cap).
class GaussianFieldSpec {
 public:
  GaussianFieldSpec(CovarianceKind kind, PointSet sites,
                    std::size_t dense_cap = 4096);

  const PointSet& sites() const { return sites_; }
  CovarianceKind kind() const { return kind_; }
  double jitter_used() const { return jitter_used_; }

  // L z with z standard normal
  std::vector<double> sample(Rng& rng) const;

 private:
  friend class SubsetGaussianSampler;

  CovarianceKind kind_;
  PointSet sites_;
  double jitter_used_ = 0.0;
  std::vector<double> chol_;  // lower triangular, row-major N x N
};

std::vector<double> sample_sphere_field(const GaussianFieldSpec& spec,
                                        Rng& rng);

// FieldSampler drawing a dense Gaussian field restricted to site subsets;
// factorizations are cached per subset (multilevel anchor sets are few)
class SubsetGaussianSampler final : public FieldSampler {
 public:
  SubsetGaussianSampler(CovarianceKind kind, PointSet sites,
                        std::size_t dense_cap = 4096);
  std::vector<double> sample(std::span<const std::size_t> sites,
                             Rng& rng) const override;

 private:
  CovarianceKind kind_;
  PointSet sites_;
  std::size_t dense_cap_;
  mutable std::map<std::vector<std::size_t>, std::shared_ptr<GaussianFieldSpec>>
      cache_;
};

// f(x) = |log(d(x, x0)/pi) - 2|^{-1}, f(x0) = 0; continuous on the sphere
// but not Hoelder continuous at x0
LabeledDataset nonhoelder_sphere(const PointSet& ps, std::span<const double> x0);

// univariate counterpart on [0, 1]: f(x) = |log x - 2|^{-1}, f(0) = 0
double nonhoelder_1d(double x);

// its exact modulus of continuity: |log t - 2|^{-1} on (0, 1), 1/2 beyond
double nonhoelder_1d_modulus(double t);

}  // namespace dmoc
