#include "dmoc/mlmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmoc {

SampleSchedule hoelder_schedule(std::size_t finest_level, double alpha,
                                int cost_dim, std::size_t q0) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("hoelder_schedule: alpha must be in (0, 1]");
  if (cost_dim < 1)
    throw std::invalid_argument("hoelder_schedule: cost_dim must be >= 1");
  if (q0 == 0) throw std::invalid_argument("hoelder_schedule: Q0 must be >= 1");
  const double factor = std::pow(2.0, -(alpha + cost_dim) / 2.0);
  SampleSchedule s;
  s.q.reserve(finest_level + 1);
  double q = static_cast<double>(q0);
  for (std::size_t l = 0; l <= finest_level; ++l) {
    s.q.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(q))));
    q *= factor;
  }
  return s;
}

MeanEstimate mc_mean(const FieldSampler& sampler, std::size_t n_sites,
                     std::size_t q, std::uint64_t seed) {
  if (q == 0) throw std::invalid_argument("mc_mean: need at least one sample");
  std::vector<std::size_t> sites(n_sites);
  for (std::size_t i = 0; i < n_sites; ++i) sites[i] = i;
  MeanEstimate est;
  est.values.assign(n_sites, 0.0);
  est.samples_per_level = {q};
  for (std::size_t s = 0; s < q; ++s) {
    Rng rng(derive_seed(seed, 0, s));
    auto y = sampler.sample(sites, rng);
    if (y.size() != n_sites)
      throw std::runtime_error("mc_mean: sampler returned wrong length");
    for (std::size_t i = 0; i < n_sites; ++i) est.values[i] += y[i];
  }
  for (auto& v : est.values) v /= static_cast<double>(q);
  return est;
}

namespace {

// sorted anchor-site list of a partition plus anchor -> position lookup
struct AnchorIndex {
  std::vector<std::size_t> sorted;

  explicit AnchorIndex(const Partition& part) : sorted(part.anchors) {
    std::sort(sorted.begin(), sorted.end());
  }
  std::size_t pos(std::size_t site) const {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), site);
    if (it == sorted.end() || *it != site)
      throw std::logic_error("mlmc: anchor sets are not nested");
    return static_cast<std::size_t>(it - sorted.begin());
  }
};

// per-cell detail (I_level - I_{level-1}) of a sample y given at the anchor
// sites of `idx` (a superset of this level's and the coarser level's anchors)
std::vector<double> cell_details(const std::vector<Partition>& parts,
                                 std::size_t level, const AnchorIndex& idx,
                                 std::span<const double> y) {
  const Partition& part = parts[level];
  std::vector<double> d(part.cell_count());
  for (std::size_t c = 0; c < part.cell_count(); ++c) {
    const std::size_t a = part.anchors[c];
    d[c] = y[idx.pos(a)];
    if (level > 0) {
      const Partition& coarse = parts[level - 1];
      d[c] -= y[idx.pos(coarse.anchors[coarse.cell_of[a]])];
    }
  }
  return d;
}

std::vector<Partition> build_partitions(const ClusterTree& tree,
                                        const PointSet& sites,
                                        std::size_t finest_level,
                                        std::uint64_t seed) {
  Rng anchor_rng(derive_seed(seed, 0xA11C0));
  return nested_tree_partitions(tree, sites, finest_level, anchor_rng);
}

}  // namespace

MeanEstimate mlmc_mean(const FieldSampler& sampler, const ClusterTree& tree,
                       const PointSet& sites, const SampleSchedule& schedule,
                       std::uint64_t seed, MlmcOptions options) {
  if (schedule.q.empty())
    throw std::invalid_argument("mlmc_mean: empty schedule");
  for (std::size_t l = 1; l < schedule.q.size(); ++l)
    if (schedule.q[l] > schedule.q[l - 1] || schedule.q[l] == 0)
      throw std::invalid_argument("mlmc_mean: schedule must be nonincreasing and positive");
  const std::size_t J = schedule.finest_level();
  auto parts = build_partitions(tree, sites, J, seed);

  MeanEstimate est;
  est.values.assign(sites.size(), 0.0);
  est.samples_per_level.resize(J + 1);

  std::vector<double> reused;  // single shared sample in test mode
  AnchorIndex finest_idx(parts[J]);
  if (options.reuse_single_sample) {
    Rng rng(derive_seed(seed, 1, 0));
    reused = sampler.sample(finest_idx.sorted, rng);
  }

  for (std::size_t j = 0; j <= J; ++j) {
    // coarse levels get the most samples: their details carry the variance,
    // fine details are small and cheap to estimate with few draws
    const std::size_t q = schedule.q[j];
    est.samples_per_level[j] = q;
    AnchorIndex idx(parts[j]);
    std::vector<double> mean_detail(parts[j].cell_count(), 0.0);
    for (std::size_t s = 0; s < q; ++s) {
      std::vector<double> d;
      if (options.reuse_single_sample) {
        // the shared sample lives on the finest anchor set; nested anchors
        // make every coarser anchor addressable through finest_idx
        d = cell_details(parts, j, finest_idx, reused);
      } else {
        Rng rng(derive_seed(seed, j + 1, s));
        auto y = sampler.sample(idx.sorted, rng);
        if (y.size() != idx.sorted.size())
          throw std::runtime_error("mlmc_mean: sampler returned wrong length");
        d = cell_details(parts, j, idx, y);
      }
      for (std::size_t c = 0; c < d.size(); ++c) mean_detail[c] += d[c];
    }
    for (auto& v : mean_detail) v /= static_cast<double>(q);
    for (std::size_t i = 0; i < sites.size(); ++i)
      est.values[i] += mean_detail[parts[j].cell_of[i]];
  }
  return est;
}

double CorrelationEstimate::entry(std::size_t i, std::size_t j) const {
  double total = 0.0;
  for (const auto& b : blocks_) {
    const std::size_t ci_k = partitions_[b.k].cell_of[i];
    const std::size_t cj_kp = partitions_[b.kp].cell_of[j];
    const std::size_t ci_kp = partitions_[b.kp].cell_of[i];
    const std::size_t cj_k = partitions_[b.k].cell_of[j];
    double acc = 0.0;
    for (std::size_t s = 0; s < b.u.size(); ++s) {
      acc += b.u[s][ci_k] * b.v[s][cj_kp];
      if (b.k != b.kp) acc += b.v[s][ci_kp] * b.u[s][cj_k];
    }
    total += acc / static_cast<double>(b.u.size());
  }
  return total;
}

CorrelationEstimate mimc_correlation(const FieldSampler& sampler,
                                     const ClusterTree& tree,
                                     const PointSet& sites,
                                     const SampleSchedule& schedule,
                                     std::uint64_t seed) {
  if (schedule.q.empty())
    throw std::invalid_argument("mimc_correlation: empty schedule");
  const std::size_t J = schedule.finest_level();
  CorrelationEstimate est;
  est.partitions_ = build_partitions(tree, sites, J, seed);
  est.samples_per_level_.resize(J + 1);

  std::vector<AnchorIndex> idx;
  idx.reserve(J + 1);
  for (std::size_t l = 0; l <= J; ++l) idx.emplace_back(est.partitions_[l]);

  std::size_t block_id = 0;
  for (std::size_t j = 0; j <= J; ++j) {
    const std::size_t q = schedule.q[j];
    est.samples_per_level_[j] = q;
    for (std::size_t k = 0; 2 * k <= j; ++k) {
      const std::size_t kp = j - k;  // k <= kp; the mirror shares samples
      CorrelationEstimate::Block block;
      block.k = k;
      block.kp = kp;
      block.u.reserve(q);
      block.v.reserve(q);
      for (std::size_t s = 0; s < q; ++s) {
        Rng rng(derive_seed(seed, 0x4D490000u + block_id, s));
        auto y = sampler.sample(idx[kp].sorted, rng);
        if (y.size() != idx[kp].sorted.size())
          throw std::runtime_error("mimc_correlation: sampler returned wrong length");
        block.u.push_back(cell_details(est.partitions_, k, idx[kp], y));
        block.v.push_back(cell_details(est.partitions_, kp, idx[kp], y));
      }
      est.blocks_.push_back(std::move(block));
      ++block_id;
    }
  }
  return est;
}

namespace {

double level_scale(const RhoClass& rho, double c_diam, double c_uni, double j) {
  return rho(c_diam * std::pow(2.0, -c_uni * j));
}

}  // namespace

double convergence_factor_ml(std::size_t finest_level, const RhoClass& rho,
                             const SampleSchedule& schedule, double c_diam,
                             double c_uni) {
  if (c_diam <= 0.0 || c_uni <= 0.0)
    throw std::invalid_argument("convergence_factor_ml: constants must be positive");
  const std::size_t J = finest_level;
  if (schedule.q.size() != J + 1)
    throw std::invalid_argument("convergence_factor_ml: schedule length mismatch");
  double sigma = level_scale(rho, c_diam, c_uni, static_cast<double>(J));
  for (std::size_t j = 0; j <= J; ++j)
    sigma += 2.0 * level_scale(rho, c_diam, c_uni, static_cast<double>(j) - 1.0) /
             std::sqrt(static_cast<double>(schedule.q[J - j]));
  return sigma;
}

double convergence_factor_mi(std::size_t finest_level, const RhoClass& rho,
                             const SampleSchedule& schedule, double c_diam,
                             double c_uni) {
  if (c_diam <= 0.0 || c_uni <= 0.0)
    throw std::invalid_argument("convergence_factor_mi: constants must be positive");
  const std::size_t J = finest_level;
  if (schedule.q.size() != J + 1)
    throw std::invalid_argument("convergence_factor_mi: schedule length mismatch");
  double sigma = 2.0 * level_scale(rho, c_diam, c_uni, static_cast<double>(J));
  for (std::size_t j = 0; j <= J; ++j) {
    double inner = 0.0;
    for (std::size_t k = 0; k <= j; ++k)
      inner += level_scale(rho, c_diam, c_uni, static_cast<double>(k) - 1.0) *
               level_scale(rho, c_diam, c_uni, static_cast<double>(j - k) - 1.0);
    sigma += 4.0 * inner / std::sqrt(static_cast<double>(schedule.q[J - j]));
  }
  return sigma;
}

}  // namespace dmoc
