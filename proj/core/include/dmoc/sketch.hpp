#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/point_set.hpp"

namespace dmoc {

// Offline product of the multilevel coarsening: per level k the coarsened
// site-index set and the precomputed modulus value at radius R^k r. Online
// evaluation is exact for t <= r and a lower-bound approximation beyond.
class ModulusSketch {
 public:
  struct Level {
    std::vector<std::size_t> sites;  // indices into the original dataset
    double value = 0.0;              // omega_{N_k}(Y_{N_k}, R^k r)
  };

  double r() const { return r_; }
  double growth() const { return growth_; }
  double horizon() const { return horizon_; }
  bool extremal_injected() const { return extremal_injected_; }
  std::size_t level_count() const { return levels_.size(); }  // K
  const std::vector<Level>& levels() const { return levels_; }

  // directory of CSVs (one per level) plus a manifest; reload reproduces
  // identical evaluations
  void save(const std::filesystem::path& dir) const;
  static ModulusSketch load(const std::filesystem::path& dir,
                            const LabeledDataset& ds);

 private:
  friend ModulusSketch build_sketch(const LabeledDataset&, double, double,
                                    double, bool, std::size_t);
  friend double eval_sketch(const ModulusSketch&, const LabeledDataset&,
                            double);
  friend std::vector<double> eval_sketch_many(const ModulusSketch&,
                                              const LabeledDataset&,
                                              std::span<const double>);

  void build_acceleration(const LabeledDataset& ds);

  double r_ = 0.0;
  double growth_ = 2.0;   // R
  double horizon_ = 0.0;  // T
  bool extremal_injected_ = false;
  std::size_t leaf_max_ = 32;
  std::vector<Level> levels_;

  // rebuilt deterministically on load, not serialized
  struct LevelIndex {
    PointSet sites;
    PointSet values;
    std::unique_ptr<ClusterTree> tree;
  };
  std::unique_ptr<ClusterTree> full_tree_;
  std::vector<LevelIndex> level_index_;
};

// Offline phase: K = ceil(log_R(T/r)) levels; level k's modulus is computed
// by range search at eps = R^k r on the level's sites, the next level is the
// greedy R^k r-cover of the current one. With inject_extremal the sites of
// the extremal value pair (1-D values only) are appended to every level.
ModulusSketch build_sketch(const LabeledDataset& ds, double r, double growth,
                           double horizon, bool inject_extremal = false,
                           std::size_t leaf_max = 32);

// Online phase: exact modulus for t <= r; otherwise the max of the level-k
// modulus at t and all precomputed coarser-level values. 0 <= t <= T.
double eval_sketch(const ModulusSketch& sketch, const LabeledDataset& ds,
                   double t);

// batch variant; equals per-t eval_sketch entry-wise
std::vector<double> eval_sketch_many(const ModulusSketch& sketch,
                                     const LabeledDataset& ds,
                                     std::span<const double> ts);

}  // namespace dmoc
