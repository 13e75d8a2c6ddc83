#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/point_set.hpp"

namespace dmoc {

// Output of the greedy ball cover: ordered centers, the ball radius, and for
// each site the greedy step that first covered it.
struct Covering {
  std::vector<std::size_t> centers;     // site indices, in greedy pick order
  double radius = 0.0;
  std::vector<std::size_t> assignment;  // per site: covering step index

  void save_csv(const std::filesystem::path& path) const;
  static Covering load_csv(const std::filesystem::path& path, double radius,
                           std::size_t n_sites);
};

// Greedy set cover over closed metric balls. Each step picks the ball
// covering the most still-uncovered sites, ties broken by lowest site index.
// Ball memberships are computed once up front, via the tree when given.
// The result is within a factor ln(N) + 1 of the optimal cover size.
Covering greedy_cover(const PointSet& ps, double radius,
                      const ClusterTree* tree = nullptr);

// |greedy_cover centers|, an upper bound on the covering number N(X, radius)
std::size_t covering_number_upper(const PointSet& ps, double radius,
                                  const ClusterTree* tree = nullptr);

// P(r, N) = 1 - cover_count * eta^N; may be negative (vacuous), returned
// as-is. eta is the caller-estimated sup_x (1 - P(B_{r/2}(x))).
double covering_probability_bound(std::size_t cover_count, double eta,
                                  std::size_t n);

}  // namespace dmoc
