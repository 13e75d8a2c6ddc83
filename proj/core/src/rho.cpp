#include "dmoc/rho.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmoc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RhoClass RhoClass::power(double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("RhoClass::power: alpha must be in (0, 1]");
  RhoClass r;
  r.kind_ = Kind::Power;
  r.alpha_ = alpha;
  return r;
}

RhoClass RhoClass::log_type() {
  RhoClass r;
  r.kind_ = Kind::LogType;
  return r;
}

RhoClass RhoClass::table(std::vector<double> ts, std::vector<double> vs) {
  if (ts.size() != vs.size() || ts.empty())
    throw std::invalid_argument("RhoClass::table: bad table");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] < 0.0) throw std::invalid_argument("RhoClass::table: negative value");
    if (i > 0 && (ts[i] <= ts[i - 1] || vs[i] < vs[i - 1]))
      throw std::invalid_argument("RhoClass::table: not nondecreasing");
  }
  RhoClass r;
  r.kind_ = Kind::Table;
  r.ts_ = std::move(ts);
  r.vs_ = std::move(vs);
  return r;
}

double RhoClass::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("RhoClass: negative argument");
  switch (kind_) {
    case Kind::Power:
      return std::pow(t, alpha_);
    case Kind::LogType:
      if (t == 0.0) return 0.0;
      if (t >= kPi) return 0.5;
      return 1.0 / std::abs(std::log(t / kPi) - 2.0);
    case Kind::Table: {
      if (t <= ts_.front()) return vs_.front() * (ts_.front() > 0.0 ? t / ts_.front() : 1.0);
      if (t >= ts_.back()) return vs_.back();
      auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts_.begin());
      const double w = (t - ts_[i - 1]) / (ts_[i] - ts_[i - 1]);
      return vs_[i - 1] + w * (vs_[i] - vs_[i - 1]);
    }
  }
  throw std::logic_error("RhoClass: unknown kind");
}

}  // namespace dmoc
