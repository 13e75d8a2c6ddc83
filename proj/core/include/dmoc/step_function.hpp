#pragma once

#include <filesystem>
#include <vector>

namespace dmoc {

// Right-continuous, nondecreasing piecewise-constant function on [0, inf).
// Only strict-increase breakpoints are stored, so eval is O(log B) and flat
// stretches cost nothing. Value before the first breakpoint is 0.
class StepFunction {
 public:
  StepFunction() = default;  // identically zero
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  // value at the largest breakpoint <= t, else 0
  double operator()(double t) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  void save_csv(const std::filesystem::path& path) const;
  static StepFunction load_csv(const std::filesystem::path& path);

 private:
  std::vector<double> breakpoints_;  // strictly increasing, nonnegative
  std::vector<double> values_;       // strictly increasing, nonnegative
};

}  // namespace dmoc
