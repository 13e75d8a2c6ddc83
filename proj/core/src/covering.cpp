#include "dmoc/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmoc/csv.hpp"

namespace dmoc {

void Covering::save_csv(const std::filesystem::path& path) const {
  std::vector<std::vector<double>> rows;
  rows.reserve(centers.size() + assignment.size());
  // block 0: greedy step, center site index; block 1: site index, step
  for (std::size_t s = 0; s < centers.size(); ++s)
    rows.push_back({0.0, static_cast<double>(s), static_cast<double>(centers[s])});
  for (std::size_t i = 0; i < assignment.size(); ++i)
    rows.push_back({1.0, static_cast<double>(i), static_cast<double>(assignment[i])});
  write_csv(path, {"block", "key", "value"},
            rows, {"radius=" + format_double(radius)});
}

Covering Covering::load_csv(const std::filesystem::path& path, double radius,
                            std::size_t n_sites) {
  auto table = read_csv(path);
  Covering c;
  c.radius = radius;
  c.assignment.assign(n_sites, 0);
  for (const auto& row : table.rows) {
    if (row.size() != 3) throw std::runtime_error("Covering: expected 3 columns");
    const auto key = static_cast<std::size_t>(row[1]);
    const auto value = static_cast<std::size_t>(row[2]);
    if (row[0] == 0.0) {
      if (key != c.centers.size())
        throw std::runtime_error("Covering: centers out of order");
      c.centers.push_back(value);
    } else {
      if (key >= n_sites) throw std::runtime_error("Covering: site index out of range");
      c.assignment[key] = value;
    }
  }
  return c;
}

Covering greedy_cover(const PointSet& ps, double radius,
                      const ClusterTree* tree) {
  if (radius < 0.0) throw std::invalid_argument("greedy_cover: negative radius");
  const std::size_t n = ps.size();
  if (n == 0) throw std::invalid_argument("greedy_cover: empty point set");

  // ball memberships, computed once
  std::vector<std::vector<std::size_t>> ball(n);
  if (tree) {
    for (std::size_t j = 0; j < n; ++j)
      ball[j] = eps_neighbors(*tree, ps, ps.point(j), radius);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (ps.distance(i, j) <= radius) {
          ball[i].push_back(j);
          if (i != j) ball[j].push_back(i);
        }
    for (auto& b : ball) std::sort(b.begin(), b.end());
  }

  Covering cover;
  cover.radius = radius;
  cover.assignment.assign(n, 0);
  std::vector<char> covered(n, 0);
  std::vector<std::size_t> gain(n);
  for (std::size_t j = 0; j < n; ++j) gain[j] = ball[j].size();
  std::size_t remaining = n;

  while (remaining > 0) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (best == n || gain[j] > gain[best]) best = j;
    if (gain[best] == 0)
      throw std::logic_error("greedy_cover: uncovered site with empty ball");
    const std::size_t step = cover.centers.size();
    cover.centers.push_back(best);
    for (std::size_t i : ball[best]) {
      if (covered[i]) continue;
      covered[i] = 1;
      cover.assignment[i] = step;
      --remaining;
      // i just left every residual it belonged to
      for (std::size_t j : ball[i]) --gain[j];
    }
  }
  return cover;
}

std::size_t covering_number_upper(const PointSet& ps, double radius,
                                  const ClusterTree* tree) {
  return greedy_cover(ps, radius, tree).centers.size();
}

double covering_probability_bound(std::size_t cover_count, double eta,
                                  std::size_t n) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("covering_probability_bound: eta must be in [0, 1]");
  return 1.0 - static_cast<double>(cover_count) *
                   std::pow(eta, static_cast<double>(n));
}

}  // namespace dmoc
