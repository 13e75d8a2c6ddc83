#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/partition.hpp"
#include "dmoc/rho.hpp"
#include "dmoc/rng.hpp"

namespace dmoc {

// Nonincreasing per-level sample counts Q_0 >= ... >= Q_J
struct SampleSchedule {
  std::vector<std::size_t> q;

  std::size_t finest_level() const { return q.size() - 1; }  // J
};

// Q_l = max(1, round(Q0 * 2^{-(alpha+cost_dim)/2 * l})); cost_dim is 1 for
// curves and 2 for surfaces
SampleSchedule hoelder_schedule(std::size_t finest_level, double alpha,
                                int cost_dim, std::size_t q0);

// Random field evaluated at a subset of the data sites. Implementations must
// produce consistent marginals: sampling a subset has the distribution of
// restricting a full sample. `sites` is sorted ascending.
class FieldSampler {
 public:
  virtual ~FieldSampler() = default;
  virtual std::vector<double> sample(std::span<const std::size_t> sites,
                                     Rng& rng) const = 0;
};

struct MeanEstimate {
  std::vector<double> values;                  // per site
  std::vector<std::size_t> samples_per_level;  // samples used at level j
};

// plain Monte Carlo mean of q independent full-set samples
MeanEstimate mc_mean(const FieldSampler& sampler, std::size_t n_sites,
                     std::size_t q, std::uint64_t seed);

struct MlmcOptions {
  // test-only: reuse one sample across all levels so the telescoping sum
  // collapses to the level-J interpolant exactly
  bool reuse_single_sample = false;
};

// Multilevel Monte Carlo mean: sum over levels j of the MC mean of the
// interpolant detail (I_j - I_{j-1}) applied to fresh independent samples,
// Q_j of them at level j (the coarse detail carries the variance and is
// cheap, so it gets the most draws). Anchors are nested across levels.
// Per-level seeds derive from (seed, level, sample), so results are
// independent of execution order.
MeanEstimate mlmc_mean(const FieldSampler& sampler, const ClusterTree& tree,
                       const PointSet& sites, const SampleSchedule& schedule,
                       std::uint64_t seed, MlmcOptions options = {});

// Sparse tensor-product (multiindex) estimator of the correlation. Entries
// are evaluated on demand from stored per-cell detail vectors; the N x N
// matrix is never formed.
class CorrelationEstimate {
 public:
  double entry(std::size_t i, std::size_t j) const;
  std::size_t size() const { return partitions_.empty() ? 0 : partitions_[0].cell_of.size(); }
  const std::vector<std::size_t>& samples_per_level() const { return samples_per_level_; }

 private:
  friend CorrelationEstimate mimc_correlation(const FieldSampler&,
                                              const ClusterTree&,
                                              const PointSet&,
                                              const SampleSchedule&,
                                              std::uint64_t);

  struct Block {
    std::size_t k, kp;  // level pair, k <= kp; mirrored term shares samples
    // per sample: detail values on the cells of partition k resp. kp
    std::vector<std::vector<double>> u;
    std::vector<std::vector<double>> v;
  };

  std::vector<Partition> partitions_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> samples_per_level_;
};

CorrelationEstimate mimc_correlation(const FieldSampler& sampler,
                                     const ClusterTree& tree,
                                     const PointSet& sites,
                                     const SampleSchedule& schedule,
                                     std::uint64_t seed);

// sigma_ML = rho(c_diam 2^{-c_uni J}) + 2 sum_j rho(c_diam 2^{-c_uni(j-1)}) / sqrt(Q_{J-j})
double convergence_factor_ml(std::size_t finest_level, const RhoClass& rho,
                             const SampleSchedule& schedule, double c_diam,
                             double c_uni);

// sigma_MI = 2 rho(c_diam 2^{-c_uni J})
//          + 4 sum_j sum_{k+k'=j} rho(c_diam 2^{-c_uni(k-1)}) rho(c_diam 2^{-c_uni(k'-1)}) / sqrt(Q_{J-j})
double convergence_factor_mi(std::size_t finest_level, const RhoClass& rho,
                             const SampleSchedule& schedule, double c_diam,
                             double c_uni);

}  // namespace dmoc
