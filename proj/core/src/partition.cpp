#include "dmoc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dmoc/csv.hpp"

namespace dmoc {

namespace {

// upper bound on a cell diameter from its bounding-box diagonal; on the
// sphere the Euclidean diagonal bounds the chord, hence the geodesic
double box_diameter_bound(const TreeNode& node, bool geodesic) {
  double s = 0.0;
  for (std::size_t k = 0; k < node.box_lo.size(); ++k) {
    const double e = node.box_hi[k] - node.box_lo[k];
    s += e * e;
  }
  const double diag = std::sqrt(s);
  if (!geodesic) return diag;
  return 2.0 * std::asin(std::min(1.0, diag / 2.0));
}

// per-node cell collection at a level: nodes at that level plus shallower
// leaves standing in for their missing descendants
std::vector<std::uint32_t> cells_at_level(const ClusterTree& tree,
                                          std::size_t level) {
  if (level > tree.depth())
    throw std::invalid_argument("tree_partition: level beyond tree depth");
  std::vector<std::uint32_t> cells;
  for (std::uint32_t ni = 0; ni < tree.nodes().size(); ++ni) {
    const TreeNode& n = tree.nodes()[ni];
    if (n.level == level || (n.is_leaf() && n.level < level))
      cells.push_back(ni);
  }
  return cells;
}

Partition partition_from_cells(const ClusterTree& tree, const PointSet& ps,
                               const std::vector<std::uint32_t>& cells,
                               const std::vector<std::size_t>& anchors) {
  Partition part;
  part.cell_of.assign(ps.size(), 0);
  part.anchors = anchors;
  const bool geodesic = ps.metric().kind() == MetricKind::GreatCircle;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const TreeNode& node = tree.nodes()[cells[c]];
    for (std::size_t i : tree.indices(node))
      part.cell_of[i] = static_cast<std::uint32_t>(c);
    part.mesh_size =
        std::max(part.mesh_size, box_diameter_bound(node, geodesic));
  }
  return part;
}

}  // namespace

void Partition::save_csv(const std::filesystem::path& path) const {
  std::vector<char> is_anchor(cell_of.size(), 0);
  for (std::size_t a : anchors) is_anchor[a] = 1;
  std::vector<std::vector<double>> rows;
  rows.reserve(cell_of.size());
  for (std::size_t i = 0; i < cell_of.size(); ++i)
    rows.push_back({static_cast<double>(i), static_cast<double>(cell_of[i]),
                    static_cast<double>(is_anchor[i])});
  write_csv(path, {"site_index", "cell_id", "is_anchor"}, rows,
            {"mesh_size=" + format_double(mesh_size)});
}

Partition voronoi_partition(const PointSet& ps, const Covering& cover) {
  if (cover.centers.empty())
    throw std::invalid_argument("voronoi_partition: empty covering");
  const std::size_t m = cover.centers.size();
  Partition part;
  part.cell_of.assign(ps.size(), 0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::size_t c = 0; c < m; ++c) {
      const double d = ps.distance(i, cover.centers[c]);
      if (d < best) {  // ties keep the earliest center in greedy order
        best = d;
        arg = static_cast<std::uint32_t>(c);
      }
    }
    part.cell_of[i] = arg;
  }
  // compress away cells that ended up empty (possible with duplicate sites)
  std::vector<std::uint32_t> remap(m, 0);
  std::vector<char> used(m, 0);
  for (std::uint32_t c : part.cell_of) used[c] = 1;
  std::uint32_t next = 0;
  for (std::size_t c = 0; c < m; ++c) {
    remap[c] = next;
    if (used[c]) {
      part.anchors.push_back(cover.centers[c]);
      ++next;
    }
  }
  for (auto& c : part.cell_of) c = remap[c];
  double bound = 2.0 * cover.radius;
  if (ps.metric().kind() == MetricKind::GreatCircle)
    bound = std::min(bound, kPi);
  if (part.cell_count() == ps.size()) bound = 0.0;       // singletons
  else if (part.cell_count() == 1) bound = diameter(ps);  // exact, cheap enough
  part.mesh_size = bound;
  return part;
}

Partition tree_partition(const ClusterTree& tree, const PointSet& ps,
                         std::size_t level, std::uint64_t seed) {
  const auto cells = cells_at_level(tree, level);
  Rng rng(seed);
  std::vector<std::size_t> anchors;
  anchors.reserve(cells.size());
  for (std::uint32_t ni : cells) {
    auto idx = tree.indices(tree.nodes()[ni]);
    anchors.push_back(idx[rng.uniform_index(idx.size())]);
  }
  return partition_from_cells(tree, ps, cells, anchors);
}

std::vector<Partition> nested_tree_partitions(const ClusterTree& tree,
                                              const PointSet& ps,
                                              std::size_t max_level,
                                              Rng& rng) {
  if (max_level > tree.depth())
    throw std::invalid_argument("nested_tree_partitions: level beyond tree depth");
  // anchor per node: random within each leaf, then propagated to parents via
  // their first child so anchor sets are nested across levels
  const auto& nodes = tree.nodes();
  std::vector<std::size_t> node_anchor(nodes.size(), 0);
  for (std::size_t ni = 0; ni < nodes.size(); ++ni)
    if (nodes[ni].is_leaf()) {
      auto idx = tree.indices(nodes[ni]);
      node_anchor[ni] = idx[rng.uniform_index(idx.size())];
    }
  // children have larger node ids than their parent: walk backwards
  for (std::size_t ni = nodes.size(); ni-- > 0;)
    if (!nodes[ni].is_leaf()) node_anchor[ni] = node_anchor[nodes[ni].children.front()];

  std::vector<Partition> parts;
  parts.reserve(max_level + 1);
  for (std::size_t level = 0; level <= max_level; ++level) {
    const auto cells = cells_at_level(tree, level);
    std::vector<std::size_t> anchors;
    anchors.reserve(cells.size());
    for (std::uint32_t ni : cells) anchors.push_back(node_anchor[ni]);
    parts.push_back(partition_from_cells(tree, ps, cells, anchors));
  }
  return parts;
}

std::vector<double> interpolate(const LabeledDataset& ds,
                                const Partition& part) {
  if (part.cell_of.size() != ds.size())
    throw std::invalid_argument("interpolate: partition/dataset size mismatch");
  const std::size_t dim = ds.values().dim();
  std::vector<double> out(ds.size() * dim);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto v = ds.values().point(part.anchors[part.cell_of[i]]);
    std::copy(v.begin(), v.end(), out.begin() + i * dim);
  }
  return out;
}

double interpolation_error(const LabeledDataset& ds,
                           std::span<const double> approx) {
  const std::size_t dim = ds.values().dim();
  if (approx.size() != ds.size() * dim)
    throw std::invalid_argument("interpolation_error: length mismatch");
  double err = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    err = std::max(err, ds.values().metric()(ds.values().point(i),
                                             approx.subspan(i * dim, dim)));
  return err;
}

double exact_mesh_size(const PointSet& ps, const Partition& part) {
  if (part.cell_of.size() != ps.size())
    throw std::invalid_argument("exact_mesh_size: size mismatch");
  std::vector<std::vector<std::size_t>> members(part.cell_count());
  for (std::size_t i = 0; i < ps.size(); ++i) members[part.cell_of[i]].push_back(i);
  double h = 0.0;
  for (const auto& cell : members)
    for (std::size_t a = 0; a < cell.size(); ++a)
      for (std::size_t b = a + 1; b < cell.size(); ++b)
        h = std::max(h, ps.distance(cell[a], cell[b]));
  return h;
}

}  // namespace dmoc
