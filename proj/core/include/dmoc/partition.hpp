#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/covering.hpp"
#include "dmoc/point_set.hpp"
#include "dmoc/rng.hpp"

namespace dmoc {

// Disjoint cell decomposition of a site set with one anchor site per cell.
// mesh_size is a cheap upper bound on the max cell diameter; tests recompute
// it exactly via exact_mesh_size.
struct Partition {
  std::vector<std::uint32_t> cell_of;  // per site
  std::vector<std::size_t> anchors;    // per cell, a site of that cell
  double mesh_size = 0.0;

  std::size_t cell_count() const { return anchors.size(); }

  void save_csv(const std::filesystem::path& path) const;
};

// Nearest-center assignment, ties to the earliest center in greedy order.
// Cell diameters are bounded by twice the covering radius.
Partition voronoi_partition(const PointSet& ps, const Covering& cover);

// Cells are the tree clusters at the given level; leaves shallower than the
// level are promoted as whole cells. Anchors drawn uniformly per cell.
Partition tree_partition(const ClusterTree& tree, const PointSet& ps,
                         std::size_t level, std::uint64_t seed);

// Partitions for levels 0..max_level with nested anchors: leaf-level anchors
// are random, a parent's anchor is the anchor of its first non-empty child.
std::vector<Partition> nested_tree_partitions(const ClusterTree& tree,
                                              const PointSet& ps,
                                              std::size_t max_level, Rng& rng);

// Piecewise-constant interpolant: value at site i is the value at the anchor
// of i's cell. Returned flattened with the dataset's value dimension.
std::vector<double> interpolate(const LabeledDataset& ds,
                                const Partition& part);

// max over sites of d_Y(y_i, approx_i)
double interpolation_error(const LabeledDataset& ds,
                           std::span<const double> approx);

// exact max cell diameter in the site metric
double exact_mesh_size(const PointSet& ps, const Partition& part);

}  // namespace dmoc
