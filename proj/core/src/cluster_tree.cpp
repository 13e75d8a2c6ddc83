#include "dmoc/cluster_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dmoc/csv.hpp"

namespace dmoc {

namespace {

void tight_box(const PointSet& ps, std::span<const std::size_t> idx,
               std::vector<double>& lo, std::vector<double>& hi) {
  const std::size_t d = ps.dim();
  lo.assign(d, std::numeric_limits<double>::infinity());
  hi.assign(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i : idx) {
    auto p = ps.point(i);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
}

// squared Euclidean distance from x to the axis-aligned box [lo, hi]
double box_dist2(std::span<const double> x, const std::vector<double>& lo,
                 const std::vector<double>& hi) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = 0.0;
    if (x[k] < lo[k]) d = lo[k] - x[k];
    else if (x[k] > hi[k]) d = x[k] - hi[k];
    s += d * d;
  }
  return s;
}

double sq(double v) { return v * v; }

}  // namespace

ClusterTree::ClusterTree(const PointSet& ps, std::size_t leaf_max)
    : leaf_max_(leaf_max) {
  if (ps.size() == 0) throw std::invalid_argument("ClusterTree: empty point set");
  if (leaf_max_ == 0) throw std::invalid_argument("ClusterTree: leaf_max must be >= 1");
  const std::size_t d = ps.dim();
  perm_.resize(ps.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  TreeNode root;
  root.begin = 0;
  root.end = ps.size();
  root.level = 0;
  tight_box(ps, {perm_.data(), perm_.size()}, root.box_lo, root.box_hi);
  nodes_.push_back(std::move(root));

  // breadth-first build; each split partitions the node's index range into
  // the 2^d congruent midpoint sub-boxes and keeps the non-empty ones
  std::vector<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t ni = queue.back();
    queue.pop_back();
    TreeNode& node = nodes_[ni];
    depth_ = std::max(depth_, static_cast<std::size_t>(node.level) + 1);
    if (node.count() <= leaf_max_) continue;
    std::vector<double> mid(d);
    bool splittable = false;
    for (std::size_t k = 0; k < d; ++k) {
      mid[k] = 0.5 * (node.box_lo[k] + node.box_hi[k]);
      if (node.box_lo[k] < node.box_hi[k]) splittable = true;
    }
    if (!splittable) continue;  // all points coincide

    // bucket the node's points by sub-box bitmask (bit k set iff coord >= mid)
    const std::size_t n_sub = std::size_t{1} << d;
    std::vector<std::vector<std::size_t>> buckets(n_sub);
    for (std::size_t p = node.begin; p < node.end; ++p) {
      auto x = ps.point(perm_[p]);
      std::size_t mask = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (x[k] >= mid[k]) mask |= std::size_t{1} << k;
      buckets[mask].push_back(perm_[p]);
    }
    const std::uint32_t child_level = node.level + 1;
    std::size_t offset = node.begin;
    std::vector<std::uint32_t> children;
    for (std::size_t b = 0; b < n_sub; ++b) {
      if (buckets[b].empty()) continue;
      TreeNode child;
      child.begin = offset;
      child.end = offset + buckets[b].size();
      child.level = child_level;
      tight_box(ps, {buckets[b].data(), buckets[b].size()}, child.box_lo,
                child.box_hi);
      std::copy(buckets[b].begin(), buckets[b].end(), perm_.begin() + offset);
      offset = child.end;
      children.push_back(static_cast<std::uint32_t>(nodes_.size()));
      queue.push_back(nodes_.size());
      nodes_.push_back(std::move(child));
    }
    nodes_[ni].children = std::move(children);
  }
}

void ClusterTree::dump_boxes_csv(const std::filesystem::path& path) const {
  const std::size_t d = nodes_.front().box_lo.size();
  std::vector<std::string> header{"level", "count"};
  for (std::size_t k = 0; k < d; ++k) header.push_back("lo" + std::to_string(k));
  for (std::size_t k = 0; k < d; ++k) header.push_back("hi" + std::to_string(k));
  std::vector<std::vector<double>> rows;
  rows.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    std::vector<double> row{static_cast<double>(n.level),
                            static_cast<double>(n.count())};
    row.insert(row.end(), n.box_lo.begin(), n.box_lo.end());
    row.insert(row.end(), n.box_hi.begin(), n.box_hi.end());
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void eps_neighbors_visit(const ClusterTree& tree, const PointSet& ps,
                         std::span<const double> x, double eps,
                         const std::function<void(std::size_t)>& visit) {
  if (eps < 0.0) return;
  if (x.size() != ps.dim())
    throw std::invalid_argument("eps_neighbors: query dimension mismatch");
  const bool geodesic = ps.metric().kind() == MetricKind::GreatCircle;
  // for the sphere, prune with the Euclidean chord of the geodesic radius;
  // chord <= arc, so no true neighbor is lost
  const double prune_eps =
      geodesic ? 2.0 * std::sin(std::min(eps, 3.14159265358979323846) / 2.0)
               : eps;
  const double prune_eps2 = sq(prune_eps);
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const TreeNode& node = tree.nodes()[stack.back()];
    stack.pop_back();
    if (box_dist2(x, node.box_lo, node.box_hi) > prune_eps2) continue;
    if (node.is_leaf()) {
      for (std::size_t i : tree.indices(node))
        if (ps.metric()(x, ps.point(i)) <= eps) visit(i);
    } else {
      stack.insert(stack.end(), node.children.begin(), node.children.end());
    }
  }
}

std::vector<std::size_t> eps_neighbors(const ClusterTree& tree,
                                       const PointSet& ps,
                                       std::span<const double> x, double eps) {
  std::vector<std::size_t> out;
  eps_neighbors_visit(tree, ps, x, eps,
                      [&](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

double nearest_distance(const ClusterTree& tree, const PointSet& ps,
                        std::span<const double> x) {
  // start from the box distance to the root and double until a hit
  const TreeNode& root = tree.root();
  double eps = std::sqrt(box_dist2(x, root.box_lo, root.box_hi));
  if (eps == 0.0) eps = 1e-12;
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    eps_neighbors_visit(tree, ps, x, eps, [&](std::size_t i) {
      best = std::min(best, ps.metric()(x, ps.point(i)));
    });
    if (best < std::numeric_limits<double>::infinity()) return best;
    eps *= 2.0;
  }
}

}  // namespace dmoc
