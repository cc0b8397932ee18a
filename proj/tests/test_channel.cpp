#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aircomp/channel.hpp"
#include "aircomp/geometry.hpp"

using namespace aircomp;

TEST_CASE("g0 from carrier frequency") {
  const ChannelParams p = ChannelParams::from_carrier(868e6, 1.0);
  CHECK(p.g0 == doctest::Approx(kSpeedOfLight / (4.0 * std::numbers::pi * 868e6)));
  CHECK(p.g0 == doctest::Approx(0.0275).epsilon(0.01));
  CHECK_THROWS_AS(ChannelParams::from_carrier(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("inverse-square power gain") {
  const ChannelParams p{0.0275, 1.0};
  CHECK(channel_power_gain(p, 1.0) == doctest::Approx(0.0275 * 0.0275));
  CHECK(channel_power_gain(p, 2.0) == doctest::Approx(channel_power_gain(p, 1.0) / 4.0));
  CHECK_THROWS_AS(channel_power_gain(p, 0.0), std::invalid_argument);
}

TEST_CASE("round trip scales as d^-4") {
  const ChannelParams p{0.03, 2.0};
  const ReceivedPowers a = received_powers(p, 0.5, 10.0);
  const ReceivedPowers b = received_powers(p, 0.5, 20.0);
  CHECK(a.forward_w == doctest::Approx(0.03 * 0.03 * 2.0 / 100.0));
  CHECK(a.backscatter_w / b.backscatter_w == doctest::Approx(16.0));
  CHECK(received_powers(p, 0.0, 10.0).backscatter_w == 0.0);
  CHECK_THROWS_AS(received_powers(p, 1.5, 10.0), std::invalid_argument);
}

TEST_CASE("effective gain matrix") {
  SensorField f;
  f.coverage_radius = 10.0;
  f.positions = {{0.0, 0.0}, {3.0, 4.0}};
  f.reflection = {0.99, 0.25};
  f.data_mean = {1.0, 1.0};
  f.data_var = {1.0, 1.0};
  const Trajectory t{50.0, {{-10.0, 0.0}, {0.0, 0.0}}};
  const ChannelParams p{0.0275, 4.0};
  const GainMatrix g = effective_gain_matrix(f, t, p);
  REQUIRE(g.sensors() == 2);
  REQUIRE(g.stops() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      const double d = distance(f, i, t, k);
      const double h = 0.0275 * 0.0275 / (d * d);
      CHECK(g.h(i, k) == doctest::Approx(h));
      CHECK(g.g(i, k) == doctest::Approx(std::sqrt(f.reflection[i] * 4.0) * h));
    }
  }
  CHECK(g.column_sum(1) == doctest::Approx(g.g(0, 1) + g.g(1, 1)));
  // Effective gain squared is the backscatter power.
  const double d = distance(f, 1, t, 0);
  CHECK(g.g(1, 0) * g.g(1, 0) == doctest::Approx(received_powers(p, 0.25, d).backscatter_w));
}
