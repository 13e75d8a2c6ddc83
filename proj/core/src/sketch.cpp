#include "dmoc/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmoc/covering.hpp"
#include "dmoc/csv.hpp"
#include "dmoc/modulus.hpp"

namespace dmoc {

namespace {

// max of d_Y over pairs of ds with d_X <= t, for every t in sorted_ts
// (nondecreasing output); one range-search pass at the largest t
std::vector<double> bucketed_range_modulus(const LabeledDataset& ds,
                                           const ClusterTree& tree,
                                           const std::vector<double>& sorted_ts) {
  std::vector<double> bucket(sorted_ts.size(), 0.0);
  if (sorted_ts.empty()) return bucket;
  const auto& xs = ds.sites();
  const auto& ys = ds.values();
  const double eps = sorted_ts.back();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    eps_neighbors_visit(tree, xs, xs.point(i), eps, [&](std::size_t j) {
      if (j <= i) return;
      const double d = xs.metric()(xs.point(i), xs.point(j));
      auto it = std::lower_bound(sorted_ts.begin(), sorted_ts.end(), d);
      if (it == sorted_ts.end()) return;
      const auto k = static_cast<std::size_t>(it - sorted_ts.begin());
      bucket[k] = std::max(bucket[k], ys.metric()(ys.point(i), ys.point(j)));
    });
  }
  for (std::size_t k = 1; k < bucket.size(); ++k)
    bucket[k] = std::max(bucket[k], bucket[k - 1]);
  return bucket;
}

}  // namespace

void ModulusSketch::build_acceleration(const LabeledDataset& ds) {
  full_tree_ = std::make_unique<ClusterTree>(ds.sites(), leaf_max_);
  level_index_.clear();
  level_index_.reserve(levels_.size());
  for (const auto& level : levels_) {
    PointSet sites = ds.sites().subset(level.sites);
    PointSet values = ds.values().subset(level.sites);
    auto tree = std::make_unique<ClusterTree>(sites, leaf_max_);
    level_index_.push_back(
        {std::move(sites), std::move(values), std::move(tree)});
  }
}

ModulusSketch build_sketch(const LabeledDataset& ds, double r, double growth,
                           double horizon, bool inject_extremal,
                           std::size_t leaf_max) {
  if (r <= 0.0) throw std::invalid_argument("build_sketch: r must be positive");
  if (growth <= 1.0) throw std::invalid_argument("build_sketch: R must be > 1");
  if (horizon < r) throw std::invalid_argument("build_sketch: T must be >= r");

  ModulusSketch sk;
  sk.r_ = r;
  sk.growth_ = growth;
  sk.horizon_ = horizon;
  sk.leaf_max_ = leaf_max;

  std::size_t extremal_lo = 0, extremal_hi = 0;
  if (inject_extremal) {
    if (ds.values().dim() != 1)
      throw std::invalid_argument(
          "build_sketch: extremal-pair injection needs 1-D values");
    for (std::size_t i = 1; i < ds.size(); ++i) {
      if (ds.values().point(i)[0] < ds.values().point(extremal_lo)[0])
        extremal_lo = i;
      if (ds.values().point(i)[0] > ds.values().point(extremal_hi)[0])
        extremal_hi = i;
    }
    sk.extremal_injected_ = true;
  }

  const auto K = static_cast<std::size_t>(
      std::max(0.0, std::ceil(std::log(horizon / r) / std::log(growth))));

  std::vector<std::size_t> current(ds.size());
  for (std::size_t i = 0; i < current.size(); ++i) current[i] = i;

  for (std::size_t k = 0; k < K; ++k) {
    if (inject_extremal) {
      for (std::size_t e : {extremal_lo, extremal_hi})
        if (std::find(current.begin(), current.end(), e) == current.end())
          current.push_back(e);
    }
    const double rk = r * std::pow(growth, static_cast<double>(k));
    LabeledDataset sub = ds.subset(current);
    ClusterTree tree(sub.sites(), leaf_max);
    ModulusSketch::Level level;
    level.sites = current;
    level.value = modulus_at_range(sub, tree, rk);
    sk.levels_.push_back(std::move(level));
    // coarsen: centers of the greedy rk-cover, mapped to original indices
    Covering cover = greedy_cover(sub.sites(), rk, &tree);
    std::vector<std::size_t> next;
    next.reserve(cover.centers.size());
    for (std::size_t c : cover.centers) next.push_back(current[c]);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  sk.build_acceleration(ds);
  return sk;
}

namespace {

// level index for t > r: smallest k with t <= R^k r, clamped to K - 1
std::size_t level_for(const ModulusSketch& sk, double t) {
  std::size_t k = static_cast<std::size_t>(std::max(
      1.0, std::ceil(std::log(t / sk.r()) / std::log(sk.growth()))));
  auto radius = [&](std::size_t kk) {
    return sk.r() * std::pow(sk.growth(), static_cast<double>(kk));
  };
  while (k > 1 && radius(k - 1) >= t) --k;
  while (k + 1 < sk.level_count() && radius(k) < t) ++k;
  return std::min(k, sk.level_count() - 1);
}

}  // namespace

double eval_sketch(const ModulusSketch& sketch, const LabeledDataset& ds,
                   double t) {
  std::vector<double> one{t};
  return eval_sketch_many(sketch, ds, one).front();
}

std::vector<double> eval_sketch_many(const ModulusSketch& sketch,
                                     const LabeledDataset& ds,
                                     std::span<const double> ts) {
  for (double t : ts) {
    if (t < 0.0) throw std::domain_error("eval_sketch: t must be nonnegative");
    if (t > sketch.horizon())
      throw std::domain_error("eval_sketch: t exceeds the sketch horizon");
  }
  if (!sketch.full_tree_)
    throw std::logic_error("eval_sketch: sketch is missing its search index");

  std::vector<double> out(ts.size(), 0.0);

  // group queries by branch: exact (t <= r) and per coarsening level
  std::vector<double> exact_ts;
  std::vector<std::vector<double>> level_ts(sketch.level_count());
  for (double t : ts) {
    if (t <= sketch.r()) exact_ts.push_back(t);
    else level_ts[level_for(sketch, t)].push_back(t);
  }

  auto assign = [&](const std::vector<double>& sorted_ts,
                    const std::vector<double>& vals, auto pred) {
    for (std::size_t q = 0; q < ts.size(); ++q) {
      if (!pred(ts[q])) continue;
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(sorted_ts.begin(), sorted_ts.end(), ts[q]) -
          sorted_ts.begin());
      out[q] = vals[pos];
    }
  };

  if (!exact_ts.empty()) {
    std::sort(exact_ts.begin(), exact_ts.end());
    auto vals = bucketed_range_modulus(ds, *sketch.full_tree_, exact_ts);
    assign(exact_ts, vals,
           [&](double t) { return t <= sketch.r(); });
  }
  for (std::size_t k = 0; k < level_ts.size(); ++k) {
    if (level_ts[k].empty()) continue;
    std::sort(level_ts[k].begin(), level_ts[k].end());
    const auto& idx = sketch.level_index_[k];
    LabeledDataset sub(idx.sites, idx.values);
    auto vals = bucketed_range_modulus(sub, *idx.tree, level_ts[k]);
    double coarse = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      coarse = std::max(coarse, sketch.levels()[j].value);
    for (auto& v : vals) v = std::max(v, coarse);
    assign(level_ts[k], vals, [&](double t) {
      return t > sketch.r() && level_for(sketch, t) == k;
    });
  }
  return out;
}

void ModulusSketch::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::vector<std::vector<double>> manifest{
      {0, r_},
      {1, growth_},
      {2, horizon_},
      {3, extremal_injected_ ? 1.0 : 0.0},
      {4, static_cast<double>(leaf_max_)},
      {5, static_cast<double>(levels_.size())}};
  for (std::size_t k = 0; k < levels_.size(); ++k)
    manifest.push_back({static_cast<double>(10 + k), levels_[k].value});
  write_csv(dir / "manifest.csv", {"field", "value"}, manifest);
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    std::vector<std::vector<double>> rows;
    rows.reserve(levels_[k].sites.size());
    for (std::size_t i : levels_[k].sites)
      rows.push_back({static_cast<double>(i)});
    write_csv(dir / ("level_" + std::to_string(k) + ".csv"), {"site_index"},
              rows);
  }
}

ModulusSketch ModulusSketch::load(const std::filesystem::path& dir,
                                  const LabeledDataset& ds) {
  auto manifest = read_csv(dir / "manifest.csv");
  ModulusSketch sk;
  std::size_t n_levels = 0;
  std::vector<double> level_values;
  for (const auto& row : manifest.rows) {
    if (row.size() != 2)
      throw std::runtime_error("ModulusSketch: malformed manifest");
    const int field = static_cast<int>(row[0]);
    switch (field) {
      case 0: sk.r_ = row[1]; break;
      case 1: sk.growth_ = row[1]; break;
      case 2: sk.horizon_ = row[1]; break;
      case 3: sk.extremal_injected_ = row[1] != 0.0; break;
      case 4: sk.leaf_max_ = static_cast<std::size_t>(row[1]); break;
      case 5: n_levels = static_cast<std::size_t>(row[1]); break;
      default:
        if (field >= 10) level_values.push_back(row[1]);
        else throw std::runtime_error("ModulusSketch: unknown manifest field");
    }
  }
  if (level_values.size() != n_levels)
    throw std::runtime_error("ModulusSketch: level count mismatch in manifest");
  for (std::size_t k = 0; k < n_levels; ++k) {
    auto table = read_csv(dir / ("level_" + std::to_string(k) + ".csv"));
    Level level;
    level.value = level_values[k];
    for (const auto& row : table.rows) {
      if (row.size() != 1 || row[0] < 0.0 || row[0] >= static_cast<double>(ds.size()))
        throw std::runtime_error("ModulusSketch: bad site index in level file");
      level.sites.push_back(static_cast<std::size_t>(row[0]));
    }
    sk.levels_.push_back(std::move(level));
  }
  sk.build_acceleration(ds);
  return sk;
}

}  // namespace dmoc
