#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "dmoc/point_set.hpp"

namespace dmoc {

struct TreeNode {
  std::size_t begin = 0;  // index range into the permuted point order
  std::size_t end = 0;
  std::uint32_t level = 0;
  std::vector<double> box_lo;  // tight bounding box of the node's points
  std::vector<double> box_hi;
  std::vector<std::uint32_t> children;  // empty children are dropped

  bool is_leaf() const { return children.empty(); }
  std::size_t count() const { return end - begin; }
};

// Bounding-box n-d-tree: recursive bisection of the node's bounding box into
// 2^k congruent sub-boxes until nodes hold at most leaf_max points. Sphere
// point sets are indexed through their R^3 Euclidean boxes. Immutable after
// construction; concurrent queries are fine.
class ClusterTree {
 public:
  ClusterTree(const PointSet& ps, std::size_t leaf_max = 32);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t depth() const { return depth_; }
  std::size_t leaf_max() const { return leaf_max_; }

  // original point indices of a node
  std::span<const std::size_t> indices(const TreeNode& node) const {
    return {perm_.data() + node.begin, node.count()};
  }

  // debug dump of bounding boxes: level, min..., max...
  void dump_boxes_csv(const std::filesystem::path& path) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> perm_;
  std::size_t depth_ = 0;
  std::size_t leaf_max_;
};

// Exactly { i : d(x, x_i) <= eps }, in increasing index order. Pruning uses
// the box distance test dist(x, box) > eps; for the great-circle metric
// candidates from Euclidean pruning are post-filtered with the geodesic
// distance (chord <= arc keeps the search exact).
std::vector<std::size_t> eps_neighbors(const ClusterTree& tree,
                                       const PointSet& ps,
                                       std::span<const double> x, double eps);

// visitor variant avoiding the result allocation
void eps_neighbors_visit(const ClusterTree& tree, const PointSet& ps,
                         std::span<const double> x, double eps,
                         const std::function<void(std::size_t)>& visit);

// distance from query to nearest point, via doubling range searches
double nearest_distance(const ClusterTree& tree, const PointSet& ps,
                        std::span<const double> x);

}  // namespace dmoc
