#include "dmoc/step_function.hpp"

#include <algorithm>
#include <stdexcept>

#include "dmoc/csv.hpp"

namespace dmoc {

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size())
    throw std::invalid_argument("StepFunction: size mismatch");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] < 0.0 || values_[i] < 0.0)
      throw std::invalid_argument("StepFunction: negative entry");
    if (i > 0 && (breakpoints_[i] <= breakpoints_[i - 1] ||
                  values_[i] < values_[i - 1]))
      throw std::invalid_argument("StepFunction: not increasing");
  }
}

double StepFunction::operator()(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return 0.0;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

void StepFunction::save_csv(const std::filesystem::path& path) const {
  std::vector<std::vector<double>> rows(breakpoints_.size());
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    rows[i] = {breakpoints_[i], values_[i]};
  write_csv(path, {"breakpoint", "value"}, rows);
}

StepFunction StepFunction::load_csv(const std::filesystem::path& path) {
  auto table = read_csv(path);
  std::vector<double> bs, vs;
  for (const auto& row : table.rows) {
    if (row.size() != 2)
      throw std::runtime_error("StepFunction: expected two columns");
    bs.push_back(row[0]);
    vs.push_back(row[1]);
  }
  return StepFunction(std::move(bs), std::move(vs));
}

}  // namespace dmoc
