#include "dmoc/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "dmoc/cluster_tree.hpp"

namespace dmoc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// run fn(i0, i1) over a split of [0, n) and collect the per-block results
template <typename Fn>
auto blockwise(std::size_t n, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{0}, std::size_t{0}));
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2048) return std::vector<R>{fn(0, n)};
  std::vector<R> results(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t i0 = std::min<std::size_t>(t * chunk, n);
    const std::size_t i1 = std::min<std::size_t>(i0 + chunk, n);
    pool.emplace_back([&, t, i0, i1] { results[t] = fn(i0, i1); });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace

double modulus_at(const LabeledDataset& ds, double t, unsigned threads) {
  if (t < 0.0) throw std::domain_error("modulus_at: t must be nonnegative");
  const auto& xs = ds.sites();
  const auto& ys = ds.values();
  const std::size_t n = ds.size();
  auto scan = [&](std::size_t i0, std::size_t i1) {
    double best = 0.0;
    for (std::size_t i = i0; i < i1; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (xs.metric()(xs.point(i), xs.point(j)) <= t)
          best = std::max(best, ys.metric()(ys.point(i), ys.point(j)));
    return best;
  };
  double best = 0.0;
  for (double b : blockwise(n, threads, scan)) best = std::max(best, b);
  return best;
}

std::vector<double> modulus_at_many(const LabeledDataset& ds,
                                    std::span<const double> ts,
                                    unsigned threads) {
  const std::size_t m = ts.size();
  std::vector<double> sorted(ts.begin(), ts.end());
  std::sort(sorted.begin(), sorted.end());
  const auto& xs = ds.sites();
  const auto& ys = ds.values();
  const std::size_t n = ds.size();
  // one pair scan; each pair lands in the bucket of the smallest t >= d
  auto scan = [&](std::size_t i0, std::size_t i1) {
    std::vector<double> bucket(m, 0.0);
    for (std::size_t i = i0; i < i1; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = xs.metric()(xs.point(i), xs.point(j));
        auto it = std::lower_bound(sorted.begin(), sorted.end(), d);
        if (it == sorted.end()) continue;
        const auto k = static_cast<std::size_t>(it - sorted.begin());
        bucket[k] =
            std::max(bucket[k], ys.metric()(ys.point(i), ys.point(j)));
      }
    return bucket;
  };
  std::vector<double> bucket(m, 0.0);
  for (const auto& part : blockwise(n, threads, scan))
    for (std::size_t k = 0; k < m; ++k) bucket[k] = std::max(bucket[k], part[k]);
  for (std::size_t k = 1; k < m; ++k) bucket[k] = std::max(bucket[k], bucket[k - 1]);
  // map back to the caller's order
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), ts[k]) - sorted.begin());
    out[k] = bucket[pos];
  }
  return out;
}

namespace {

// staircase of (distance, value) pairs with both coordinates strictly
// increasing; dominated pairs are discarded on insert
using Staircase = std::map<double, double>;

void staircase_insert(Staircase& s, double d, double v) {
  auto it = s.lower_bound(d);
  if (it != s.begin() && std::prev(it)->second >= v) return;
  if (it != s.end() && it->first == d) {
    if (it->second >= v) return;
    it->second = v;
    ++it;
  } else {
    it = std::next(s.emplace_hint(it, d, v));
  }
  while (it != s.end() && it->second <= v) it = s.erase(it);
}

}  // namespace

StepFunction modulus_full(const LabeledDataset& ds, unsigned threads) {
  const auto& xs = ds.sites();
  const auto& ys = ds.values();
  const std::size_t n = ds.size();
  auto scan = [&](std::size_t i0, std::size_t i1) {
    Staircase s;
    for (std::size_t i = i0; i < i1; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = ys.metric()(ys.point(i), ys.point(j));
        if (v <= 0.0) continue;
        staircase_insert(s, xs.metric()(xs.point(i), xs.point(j)), v);
      }
    return s;
  };
  Staircase merged;
  for (const auto& part : blockwise(n, threads, scan))
    for (const auto& [d, v] : part) staircase_insert(merged, d, v);
  std::vector<double> bs, vs;
  bs.reserve(merged.size());
  vs.reserve(merged.size());
  for (const auto& [d, v] : merged) {
    bs.push_back(d);
    vs.push_back(v);
  }
  return StepFunction(std::move(bs), std::move(vs));
}

double modulus_at_range(const LabeledDataset& ds, const ClusterTree& tree,
                        double t) {
  if (t < 0.0) throw std::domain_error("modulus_at_range: t must be nonnegative");
  const auto& xs = ds.sites();
  const auto& ys = ds.values();
  double best = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    eps_neighbors_visit(tree, xs, xs.point(i), t, [&](std::size_t j) {
      if (j > i)
        best = std::max(best, ys.metric()(ys.point(i), ys.point(j)));
    });
  }
  return best;
}

double seminorm(const LabeledDataset& ds, const RhoClass& rho) {
  const StepFunction omega = modulus_full(ds);
  const auto& xs = ds.sites();
  const std::size_t n = ds.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = xs.metric()(xs.point(i), xs.point(j));
      if (d <= 0.0) continue;  // rho may vanish at 0; i != j pairs only
      const double w = omega(d);
      if (w == 0.0) continue;
      const double r = rho(d);
      if (r <= 0.0)
        throw std::domain_error("seminorm: rho vanishes at a realized distance");
      best = std::max(best, w / r);
    }
  return best;
}

double analytic_modulus(AnalyticModulus which, double t) {
  if (t < 0.0) throw std::domain_error("analytic_modulus: t must be nonnegative");
  switch (which) {
    case AnalyticModulus::Sqrt1d:
      return t >= 1.0 ? 1.0 : std::sqrt(t);
    case AnalyticModulus::LogSphere:
      if (t == 0.0) return 0.0;
      if (t >= kPi) return 0.5;
      return 1.0 / std::abs(std::log(t / kPi) - 2.0);
    case AnalyticModulus::WienerApprox:
      if (t <= 0.0 || t >= 1.0)
        throw std::domain_error("analytic_modulus: wiener-approx needs t in (0, 1)");
      return std::sqrt(2.0 * t * std::log(1.0 / t));
  }
  throw std::logic_error("analytic_modulus: unknown kind");
}

}  // namespace dmoc
