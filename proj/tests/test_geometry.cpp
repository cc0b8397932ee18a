#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aircomp/geometry.hpp"
#include "aircomp/random.hpp"

using namespace aircomp;

TEST_CASE("deployment is seeded and inside the disk") {
  const SensorField a = deploy_sensors(500, 10.0, 0.99, 1.0, 1.0, 17);
  const SensorField b = deploy_sensors(500, 10.0, 0.99, 1.0, 1.0, 17);
  const SensorField c = deploy_sensors(500, 10.0, 0.99, 1.0, 1.0, 18);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.size() == 500);
  for (const Point& p : a.positions) CHECK(std::hypot(p.x, p.y) <= 10.0);
  CHECK_NOTHROW(a.validate());
}

TEST_CASE("deployment is area-uniform") {
  // P(r <= R/2) = 1/4 for an area-uniform disk.
  const std::size_t n = 40000;
  const SensorField f = deploy_sensors(n, 10.0, 1.0, 0.0, 1.0, 3);
  std::size_t inner = 0;
  double mean_x = 0.0;
  for (const Point& p : f.positions) {
    if (std::hypot(p.x, p.y) <= 5.0) ++inner;
    mean_x += p.x;
  }
  const double frac = static_cast<double>(inner) / n;
  CHECK(std::abs(frac - 0.25) < 5.0 * std::sqrt(0.25 * 0.75 / n));
  CHECK(std::abs(mean_x / n) < 5.0 * std::sqrt(25.0 / n));
}

TEST_CASE("diameter trajectory") {
  const Trajectory t = plan_diameter_trajectory(5, 10.0, 50.0);
  REQUIRE(t.size() == 5);
  CHECK(t.stops.front().x == -10.0);
  CHECK(t.stops.back().x == 10.0);
  CHECK(t.stops[2].x == doctest::Approx(0.0));
  for (const Point& p : t.stops) CHECK(p.y == 0.0);
  for (std::size_t k = 1; k < 5; ++k) {
    CHECK(t.stops[k].x - t.stops[k - 1].x == doctest::Approx(5.0));
  }
  const Trajectory one = plan_diameter_trajectory(1, 10.0, 50.0);
  REQUIRE(one.size() == 1);
  CHECK(one.stops[0] == Point{0.0, 0.0});
  CHECK_THROWS_AS(plan_diameter_trajectory(0, 10.0, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(plan_diameter_trajectory(3, 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("distance") {
  SensorField f;
  f.coverage_radius = 10.0;
  f.positions = {{3.0, 4.0}};
  f.reflection = {1.0};
  f.data_mean = {0.0};
  f.data_var = {1.0};
  Trajectory t{12.0, {{0.0, 0.0}}};
  CHECK(distance(f, 0, t, 0) == doctest::Approx(13.0));
  CHECK_THROWS_AS(distance(f, 1, t, 0), std::out_of_range);
  CHECK_THROWS_AS(distance(f, 0, t, 1), std::out_of_range);
}

TEST_CASE("distance bound holds on random instances") {
  Rng rng(11);
  std::size_t violations = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double r = 0.5 + 50.0 * rng.uniform();
    const double h = 0.5 + 100.0 * rng.uniform();
    const std::size_t k = 1 + static_cast<std::size_t>(10 * rng.uniform());
    const SensorField f = deploy_sensors(8, r, 1.0, 0.0, 1.0, rng.uniform() * 1e18);
    const Trajectory t = plan_diameter_trajectory(k, r, h);
    const double hi = max_distance_bound(r, h);
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t q = 0; q < k; ++q) {
        const double d = distance(f, i, t, q);
        if (d < h || d > hi) ++violations;
      }
    }
  }
  CHECK(violations == 0);
  CHECK(max_distance_bound(10.0, 50.0) == doctest::Approx(50.0 * std::sqrt(1.0 + 0.16)));
}

TEST_CASE("field validation") {
  SensorField f = deploy_sensors(3, 10.0, 0.5, 1.0, 1.0, 1);
  f.reflection[1] = 0.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f = deploy_sensors(3, 10.0, 0.5, 1.0, 1.0, 1);
  f.data_var[0] = -1.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f = deploy_sensors(3, 10.0, 0.5, 1.0, 1.0, 1);
  f.positions[2] = {20.0, 0.0};
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f = deploy_sensors(3, 10.0, 0.5, 1.0, 1.0, 1);
  f.data_mean.pop_back();
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
