#pragma once

#include <span>
#include <vector>

#include "dmoc/point_set.hpp"
#include "dmoc/rho.hpp"
#include "dmoc/step_function.hpp"

namespace dmoc {

class ClusterTree;

// Exact discrete modulus of continuity at a single t: max of d_Y(y_i, y_j)
// over all pairs with d_X(x_i, x_j) <= t. O(N^2) pair scan; the scan may be
// partitioned over `threads` index blocks and max-reduced, the result is
// independent of the partitioning.
double modulus_at(const LabeledDataset& ds, double t, unsigned threads = 1);

// modulus at several query points in one pair scan; ts need not be sorted
std::vector<double> modulus_at_many(const LabeledDataset& ds,
                                    std::span<const double> ts,
                                    unsigned threads = 1);

// complete step function of the modulus: breakpoints at realized site
// distances where the running max increases
StepFunction modulus_full(const LabeledDataset& ds, unsigned threads = 1);

// exact modulus at t using an epsilon-range search on a cluster tree over
// the sites; cheap for small t
double modulus_at_range(const LabeledDataset& ds, const ClusterTree& tree,
                        double t);

// discrete rho-seminorm: max over i != j of rho(d_ij)^{-1} omega(d_ij).
// Throws std::domain_error if rho vanishes at a realized positive distance.
double seminorm(const LabeledDataset& ds, const RhoClass& rho);

enum class AnalyticModulus {
  Sqrt1d,       // sqrt(t) for t <= 1, else 1
  LogSphere,    // 0 at 0, |log(t/pi) - 2|^{-1} on (0, pi), 1/2 beyond
  WienerApprox, // sqrt(2 t log(1/t)), only defined on (0, 1)
};

double analytic_modulus(AnalyticModulus which, double t);

}  // namespace dmoc
