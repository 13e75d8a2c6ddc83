#include <doctest.h>

#include <cmath>

#include "dmoc/metric.hpp"
#include "dmoc/rng.hpp"
#include "helpers.hpp"

using namespace dmoc;

namespace {

void check_axioms(const Metric& m, std::span<const double> a,
                  std::span<const double> b, std::span<const double> c) {
  const double dab = m(a, b), dba = m(b, a), dac = m(a, c), dbc = m(b, c);
  CHECK(m(a, a) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dab == dba);
  CHECK(dab >= 0.0);
  CHECK(dab <= dac + dbc + 1e-12);
}

}  // namespace

TEST_CASE("metric axioms hold on random triples") {
  Rng rng(7);
  for (int rep = 0; rep < 1000; ++rep) {
    double a1[1] = {rng.uniform(-5, 5)}, b1[1] = {rng.uniform(-5, 5)},
           c1[1] = {rng.uniform(-5, 5)};
    check_axioms(Metric::abs_diff_1d(), a1, b1, c1);

    double a3[3], b3[3], c3[3];
    for (int k = 0; k < 3; ++k) {
      a3[k] = rng.uniform(-5, 5);
      b3[k] = rng.uniform(-5, 5);
      c3[k] = rng.uniform(-5, 5);
    }
    check_axioms(Metric::euclidean(), a3, b3, c3);

    auto sp = testing::random_sphere_points(3, 1000 + rep);
    check_axioms(Metric::great_circle(), sp.point(0), sp.point(1), sp.point(2));
  }
}

TEST_CASE("great-circle distance known values") {
  const double north[3] = {0, 0, 1}, south[3] = {0, 0, -1}, east[3] = {1, 0, 0};
  CHECK(great_circle_distance(north, south) == doctest::Approx(kPi));
  CHECK(great_circle_distance(north, east) == doctest::Approx(kPi / 2));
  CHECK(great_circle_distance(north, north) == doctest::Approx(0.0));
}

TEST_CASE("callback metric") {
  auto m = Metric::callback([](std::span<const double> a,
                               std::span<const double> b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
  });
  const double p[2] = {0, 0}, q[2] = {1, 2};
  CHECK(m(p, q) == doctest::Approx(3.0));
  CHECK_FALSE(m.has_embedding());
  CHECK_THROWS(Metric::callback(nullptr));
}
