#pragma once

#include <vector>

namespace dmoc {

// Nonnegative, nondecreasing gauge function on (0, inf) used by the
// rho-seminorm and the convergence factors.
class RhoClass {
 public:
  // t^alpha, alpha in (0, 1]
  static RhoClass power(double alpha);

  // |log(t / pi) - 2|^{-1} for t in (0, pi), 1/2 for t >= pi, 0 at t = 0
  static RhoClass log_type();

  // piecewise-linear interpolation of a nondecreasing (t, value) table;
  // constant extrapolation beyond the last abscissa
  static RhoClass table(std::vector<double> ts, std::vector<double> vs);

  double operator()(double t) const;

 private:
  RhoClass() = default;

  enum class Kind { Power, LogType, Table } kind_ = Kind::Power;
  double alpha_ = 1.0;
  std::vector<double> ts_, vs_;
};

}  // namespace dmoc
