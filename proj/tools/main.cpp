// Experiment runner: every library module exposed as a subcommand, emitting
// CSV with a config-hash/seed comment so runs are reproducible byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmoc/cluster_tree.hpp"
#include "dmoc/covering.hpp"
#include "dmoc/csv.hpp"
#include "dmoc/datagen.hpp"
#include "dmoc/metric.hpp"
#include "dmoc/mlmc.hpp"
#include "dmoc/modulus.hpp"
#include "dmoc/partition.hpp"
#include "dmoc/point_set.hpp"
#include "dmoc/rng.hpp"
#include "dmoc/sketch.hpp"
#include "dmoc/step_function.hpp"

namespace {

using namespace dmoc;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::map<std::string, std::string> kv;
  std::map<std::string, int> line_of;
  std::uint64_t hash = 0;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  const std::string& require(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigError("missing key `" + key + "` in config");
    return it->second;
  }

  std::string get(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  Config cfg;
  cfg.hash = fnv1a(buffer.str());
  std::istringstream lines(buffer.str());
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got `" + t + "`");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.kv.count(key))
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key `" + key + "`");
    cfg.kv[key] = value;
    cfg.line_of[key] = lineno;
  }
  return cfg;
}

void check_keys(const Config& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : cfg.kv)
    if (!allowed.count(key))
      throw ConfigError("config line " + std::to_string(cfg.line_of.at(key)) +
                        ": unknown key `" + key + "`");
}

double to_double(const Config& cfg, const std::string& key,
                 const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(cfg.line_of.at(key)) +
                      ": key `" + key + "` is not a number: `" + raw + "`");
  }
}

double get_double(const Config& cfg, const std::string& key) {
  return to_double(cfg, key, cfg.require(key));
}

double get_double(const Config& cfg, const std::string& key, double dflt) {
  return cfg.has(key) ? get_double(cfg, key) : dflt;
}

std::size_t get_size(const Config& cfg, const std::string& key) {
  const double v = get_double(cfg, key);
  if (v < 0 || v != std::floor(v))
    throw ConfigError("key `" + key + "` must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::size_t get_size(const Config& cfg, const std::string& key,
                     std::size_t dflt) {
  return cfg.has(key) ? get_size(cfg, key) : dflt;
}

std::vector<double> get_list(const Config& cfg, const std::string& key) {
  const std::string raw = cfg.require(key);
  std::vector<double> out;
  std::string item;
  std::istringstream ss(raw);
  while (std::getline(ss, item, ','))
    out.push_back(to_double(cfg, key, trim(item)));
  if (out.empty()) throw ConfigError("key `" + key + "` is an empty list");
  return out;
}

struct GlobalOpts {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

std::vector<std::string> run_comments(const Config& cfg,
                                      const GlobalOpts& g) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "config_hash=%016llx seed=%llu",
                static_cast<unsigned long long>(cfg.hash),
                static_cast<unsigned long long>(g.seed));
  return {buf};
}

// quadratically graded grid t_k = (k/M)^2 * b, k = 1..M
std::vector<double> graded_grid(double b, std::size_t m) {
  std::vector<double> ts(m);
  for (std::size_t k = 1; k <= m; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(m);
    ts[k - 1] = u * u * b;
  }
  return ts;
}

std::vector<double> sorted_uniform_times(std::size_t n, double horizon,
                                         Rng& rng) {
  std::vector<double> ts(n);
  for (auto& t : ts) t = rng.uniform(0.0, horizon);
  std::sort(ts.begin(), ts.end());
  // nudge duplicates apart; Wiener times must be strictly increasing
  for (std::size_t i = 1; i < n; ++i)
    if (ts[i] <= ts[i - 1]) ts[i] = std::nextafter(ts[i - 1], horizon * 2.0);
  if (!ts.empty() && ts.front() <= 0.0)
    ts.front() = std::nextafter(0.0, 1.0);
  std::sort(ts.begin(), ts.end());
  return ts;
}

LabeledDataset load_input_dataset(const Config& cfg) {
  const std::string path = cfg.require("input");
  std::size_t skipped = 0;
  auto ds = load_timeseries(path, &skipped);
  if (skipped > 0)
    std::cerr << "note: skipped " << skipped << " non-numeric rows in " << path
              << "\n";
  return ds;
}

PointSet load_input_sites(const Config& cfg) {
  const std::string path = cfg.require("input");
  const std::string metric = cfg.get("metric", "euclidean");
  Metric m = Metric::euclidean();
  if (metric == "sphere") m = Metric::great_circle();
  else if (metric == "abs") m = Metric::abs_diff_1d();
  else if (metric != "euclidean")
    throw ConfigError("key `metric` must be one of abs, euclidean, sphere");
  auto ps = load_point_set(path, std::move(m));
  if (metric == "abs" && ps.dim() != 1)
    throw ConfigError("metric `abs` needs one-column input");
  return ps;
}

int cmd_gen(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"kind", "n", "horizon", "pole_z"});
  const std::string kind = cfg.require("kind");
  const std::size_t n = get_size(cfg, "n");
  std::filesystem::create_directories(g.out);
  Rng rng(g.seed);
  if (kind == "wiener") {
    const double horizon = get_double(cfg, "horizon", 1.0);
    auto times = sorted_uniform_times(n, horizon, rng);
    auto values = sample_wiener(times, rng);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = {times[i], values[i]};
    write_csv(g.out / "dataset.csv", {"t", "value"}, rows,
              run_comments(cfg, g));
  } else if (kind == "fibonacci") {
    auto ps = fibonacci_lattice(n);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = ps.point(i);
      rows[i] = {p[0], p[1], p[2]};
    }
    write_csv(g.out / "sites.csv", {"x", "y", "z"}, rows,
              run_comments(cfg, g));
  } else if (kind == "sphere-field") {
    auto ps = fibonacci_lattice(n);
    GaussianFieldSpec spec(CovarianceKind::SphereExponential, ps);
    auto values = sample_sphere_field(spec, rng);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = ps.point(i);
      rows[i] = {p[0], p[1], p[2], values[i]};
    }
    write_csv(g.out / "dataset.csv", {"x", "y", "z", "value"}, rows,
              run_comments(cfg, g));
  } else if (kind == "nonhoelder-sphere") {
    auto ps = fibonacci_lattice(n);
    const double pole[3] = {0.0, 0.0, 1.0};
    auto ds = nonhoelder_sphere(ps, {pole, 3});
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = ps.point(i);
      rows[i] = {p[0], p[1], p[2], ds.values().point(i)[0]};
    }
    write_csv(g.out / "dataset.csv", {"x", "y", "z", "value"}, rows,
              run_comments(cfg, g));
  } else {
    throw ConfigError("key `kind` must be one of wiener, fibonacci, "
                      "sphere-field, nonhoelder-sphere");
  }
  return 0;
}

std::vector<double> grid_from_config(const Config& cfg) {
  if (cfg.has("grid")) return get_list(cfg, "grid");
  const double b = get_double(cfg, "grid_max");
  const std::size_t m = get_size(cfg, "grid_points");
  if (m == 0) throw ConfigError("key `grid_points` must be >= 1");
  return graded_grid(b, m);
}

int cmd_modulus(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"input", "mode", "grid", "grid_max", "grid_points", "r",
                   "R", "T", "leaf_max"});
  auto ds = load_input_dataset(cfg);
  auto ts = grid_from_config(cfg);
  const std::string mode = cfg.get("mode", "exact");
  std::vector<double> values;
  if (mode == "exact") {
    values = modulus_at_many(ds, ts, g.threads);
  } else if (mode == "fast") {
    const double r = get_double(cfg, "r");
    const double R = get_double(cfg, "R");
    const double T = get_double(cfg, "T");
    const std::size_t leaf_max = get_size(cfg, "leaf_max", 32);
    auto sketch = build_sketch(ds, r, R, T, false, leaf_max);
    values = eval_sketch_many(sketch, ds, ts);
  } else {
    throw ConfigError("key `mode` must be exact or fast");
  }
  std::filesystem::create_directories(g.out);
  std::vector<std::vector<double>> rows(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) rows[k] = {ts[k], values[k]};
  write_csv(g.out / "modulus.csv", {"t", "value"}, rows, run_comments(cfg, g));
  return 0;
}

int cmd_cover(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"input", "metric", "radius", "leaf_max"});
  auto ps = load_input_sites(cfg);
  const double radius = get_double(cfg, "radius");
  ClusterTree tree(ps, get_size(cfg, "leaf_max", 32));
  auto cover = greedy_cover(ps, radius, &tree);
  std::filesystem::create_directories(g.out);
  std::vector<char> is_center(ps.size(), 0);
  for (std::size_t c : cover.centers) is_center[c] = 1;
  std::vector<std::vector<double>> rows(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    rows[i] = {static_cast<double>(i),
               static_cast<double>(cover.assignment[i]),
               static_cast<double>(is_center[i])};
  auto comments = run_comments(cfg, g);
  comments.push_back("radius=" + format_double(radius) + " centers=" +
                     std::to_string(cover.centers.size()));
  write_csv(g.out / "cover.csv", {"site_index", "covering_step", "is_center"},
            rows, comments);
  return 0;
}

LabeledDataset target_dataset(const std::string& target,
                              std::vector<double> sites) {
  std::vector<double> values(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    values[i] = target == "sqrt-1d" ? std::sqrt(sites[i])
                                    : nonhoelder_1d(sites[i]);
  return LabeledDataset(PointSet::from_1d(std::move(sites)),
                        PointSet::from_1d(std::move(values)));
}

double analytic_target(const std::string& target, double t) {
  return target == "sqrt-1d" ? analytic_modulus(AnalyticModulus::Sqrt1d, t)
                             : nonhoelder_1d_modulus(t);
}

// composite trapezoid of (omega_N - analytic)^2 on a graded grid over [0, 1]
double l2_error(const LabeledDataset& ds, const std::string& target,
                std::size_t quad_points, unsigned threads) {
  auto omega = modulus_full(ds, threads);
  std::vector<double> ts = graded_grid(1.0, quad_points);
  ts.insert(ts.begin(), 0.0);
  double acc = 0.0;
  double prev_t = 0.0, prev_f = 0.0;
  for (double t : ts) {
    const double diff = omega(t) - analytic_target(target, t);
    const double f = diff * diff;
    acc += 0.5 * (f + prev_f) * (t - prev_t);
    prev_t = t;
    prev_f = f;
  }
  return std::sqrt(acc);
}

int cmd_consistency(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"target", "scheme", "n_list", "replicas", "quad_points"});
  const std::string target = cfg.require("target");
  if (target != "sqrt-1d" && target != "log-1d")
    throw ConfigError("key `target` must be sqrt-1d or log-1d");
  const std::string scheme = cfg.require("scheme");
  if (scheme != "uniform" && scheme != "iid-uniform")
    throw ConfigError("key `scheme` must be uniform or iid-uniform");
  const auto ns = get_list(cfg, "n_list");
  const std::size_t replicas =
      scheme == "uniform" ? 1 : get_size(cfg, "replicas", 10);
  const std::size_t quad_points = get_size(cfg, "quad_points", 10000);

  std::vector<std::vector<double>> rows;
  for (double n_raw : ns) {
    const auto n = static_cast<std::size_t>(n_raw);
    if (n < 2) throw ConfigError("key `n_list` entries must be >= 2");
    std::vector<double> errs;
    for (std::size_t rep = 0; rep < replicas; ++rep) {
      std::vector<double> sites(n);
      if (scheme == "uniform") {
        for (std::size_t i = 0; i < n; ++i)
          sites[i] = static_cast<double>(i) / static_cast<double>(n - 1);
      } else {
        Rng rng(derive_seed(g.seed, n, rep));
        for (auto& s : sites) s = rng.uniform();
        std::sort(sites.begin(), sites.end());
      }
      errs.push_back(
          l2_error(target_dataset(target, std::move(sites)), target,
                   quad_points, g.threads));
    }
    double mean = 0.0;
    for (double e : errs) mean += e;
    mean /= static_cast<double>(errs.size());
    double var = 0.0;
    for (double e : errs) var += (e - mean) * (e - mean);
    const double stddev =
        errs.size() > 1 ? std::sqrt(var / static_cast<double>(errs.size() - 1))
                        : 0.0;
    rows.push_back({static_cast<double>(n), mean, stddev});
  }
  std::filesystem::create_directories(g.out);
  write_csv(g.out / "consistency.csv", {"n", "mean_l2_error", "std"}, rows,
            run_comments(cfg, g));
  return 0;
}

LabeledDataset interp_dataset(const Config& cfg, const GlobalOpts& g) {
  const std::string dataset = cfg.require("dataset");
  if (dataset == "timeseries") return load_input_dataset(cfg);
  const std::size_t n = get_size(cfg, "n");
  Rng rng(derive_seed(g.seed, 0xDA7A));
  if (dataset == "wiener") {
    auto times = sorted_uniform_times(n, 1.0, rng);
    auto values = sample_wiener(times, rng);
    return LabeledDataset(PointSet::from_1d(std::move(times)),
                          PointSet::from_1d(std::move(values)));
  }
  if (dataset == "nonhoelder-sphere") {
    const double pole[3] = {0.0, 0.0, 1.0};
    return nonhoelder_sphere(fibonacci_lattice(n), {pole, 3});
  }
  throw ConfigError(
      "key `dataset` must be wiener, nonhoelder-sphere, or timeseries");
}

int cmd_interp(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"dataset", "input", "n", "leaf_max", "max_level",
                   "replicas"});
  auto ds = interp_dataset(cfg, g);
  ClusterTree tree(ds.sites(), get_size(cfg, "leaf_max", 32));
  const std::size_t max_level =
      std::min(get_size(cfg, "max_level", tree.depth() - 1), tree.depth() - 1);
  const std::size_t replicas = get_size(cfg, "replicas", 10);

  // mean/std of the max interpolation error per level across anchor draws
  std::vector<std::vector<double>> sums(max_level + 1);
  std::vector<double> h_exact(max_level + 1, 0.0);
  for (std::size_t rep = 0; rep < replicas; ++rep) {
    Rng rng(derive_seed(g.seed, 0xA11C, rep));
    auto parts = nested_tree_partitions(tree, ds.sites(), max_level, rng);
    for (std::size_t level = 0; level <= max_level; ++level) {
      const double err =
          interpolation_error(ds, interpolate(ds, parts[level]));
      sums[level].push_back(err);
      if (rep == 0) h_exact[level] = exact_mesh_size(ds.sites(), parts[level]);
    }
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t level = 0; level <= max_level; ++level) {
    double mean = 0.0;
    for (double e : sums[level]) mean += e;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (double e : sums[level]) var += (e - mean) * (e - mean);
    const double stddev =
        replicas > 1 ? std::sqrt(var / static_cast<double>(replicas - 1)) : 0.0;
    rows.push_back({static_cast<double>(level), h_exact[level], mean, stddev,
                    modulus_at(ds, h_exact[level], g.threads)});
  }
  std::filesystem::create_directories(g.out);
  write_csv(g.out / "interp.csv",
            {"level", "h", "mean_max_error", "std", "modulus_at_h"}, rows,
            run_comments(cfg, g));
  return 0;
}

int cmd_mlmc(const Config& cfg, const GlobalOpts& g) {
  check_keys(cfg, {"field", "n_list", "alpha", "q0", "replicas", "leaf_max",
                   "max_level"});
  const std::string field = cfg.require("field");
  if (field != "wiener" && field != "sphere")
    throw ConfigError("key `field` must be wiener or sphere");
  const double alpha = get_double(cfg, "alpha", 0.5);
  const std::size_t replicas = get_size(cfg, "replicas", 10);
  const std::size_t leaf_max = get_size(cfg, "leaf_max", 32);
  const int cost_dim = field == "wiener" ? 1 : 2;

  std::vector<std::vector<double>> rows;
  for (double n_raw : get_list(cfg, "n_list")) {
    const auto n = static_cast<std::size_t>(n_raw);
    Rng site_rng(derive_seed(g.seed, 0x517E, n));
    PointSet sites = field == "wiener"
                         ? PointSet::from_1d(sorted_uniform_times(n, 1.0, site_rng))
                         : fibonacci_lattice(n);
    std::unique_ptr<FieldSampler> sampler;
    if (field == "wiener")
      sampler = std::make_unique<WienerSampler>(sites.coords());
    else
      sampler = std::make_unique<SubsetGaussianSampler>(
          CovarianceKind::SphereExponential, sites);
    ClusterTree tree(sites, leaf_max);
    const std::size_t J =
        std::min(get_size(cfg, "max_level", tree.depth() - 1),
                 tree.depth() - 1);
    // default Q0 = N samples at the coarsest level, for an N^{-1/2} target
    auto schedule = hoelder_schedule(J, alpha, cost_dim,
                                     get_size(cfg, "q0", n));
    std::vector<double> errs;
    for (std::size_t rep = 0; rep < replicas; ++rep) {
      auto est = mlmc_mean(*sampler, tree, sites, schedule,
                           derive_seed(g.seed, n, rep));
      double err = 0.0;  // both fields have exact mean zero
      for (double v : est.values) err = std::max(err, std::abs(v));
      errs.push_back(err);
    }
    double mean = 0.0;
    for (double e : errs) mean += e;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (double e : errs) var += (e - mean) * (e - mean);
    const double stddev =
        replicas > 1 ? std::sqrt(var / static_cast<double>(replicas - 1)) : 0.0;
    rows.push_back({static_cast<double>(n), mean, stddev});
  }
  std::filesystem::create_directories(g.out);
  write_csv(g.out / "mlmc.csv", {"n", "mean_max_error", "std"}, rows,
            run_comments(cfg, g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete modulus of continuity toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "experiment config file (key=value)");
  app.add_option("--seed", g.seed, "master random seed");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker thread count");

  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  auto* modulus = app.add_subcommand("modulus", "evaluate the discrete modulus");
  auto* cover = app.add_subcommand("cover", "greedy ball cover");
  auto* consistency =
      app.add_subcommand("consistency", "modulus convergence study");
  auto* interp = app.add_subcommand("interp", "interpolation error study");
  auto* mlmc = app.add_subcommand("mlmc", "multilevel Monte Carlo study");
  for (auto* sub : {gen, modulus, cover, consistency, interp, mlmc})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.config.empty()) throw ConfigError("--config is required");
    const Config cfg = parse_config(g.config);
    if (gen->parsed()) return cmd_gen(cfg, g);
    if (modulus->parsed()) return cmd_modulus(cfg, g);
    if (cover->parsed()) return cmd_cover(cfg, g);
    if (consistency->parsed()) return cmd_consistency(cfg, g);
    if (interp->parsed()) return cmd_interp(cfg, g);
    if (mlmc->parsed()) return cmd_mlmc(cfg, g);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
