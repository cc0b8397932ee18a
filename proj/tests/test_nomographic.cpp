#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "aircomp/nomographic.hpp"
#include "support/oracles.hpp"

using namespace aircomp;

TEST_CASE("presets") {
  const TargetSpec a = preset_target(1, 4);
  CHECK(a.weights == std::vector<double>{1, 1, 1, 1});
  CHECK(a.exponents == std::vector<int>{1, 1, 1, 1});
  const TargetSpec b = preset_target(2, 3);
  CHECK(b.exponents == std::vector<int>{2, 2, 2});
  const TargetSpec c = preset_target(3, 3);
  CHECK(c.weights == std::vector<double>{1, 2, 3});
  CHECK(c.exponents == std::vector<int>{3, 3, 3});
  CHECK_THROWS(preset_target(4, 3));
}

TEST_CASE("target value") {
  const TargetSpec c = preset_target(3, 3);
  const std::vector<double> d{1.0, -2.0, 0.5};
  CHECK(target_value(c, d) == doctest::Approx(1.0 - 16.0 + 3.0 * 0.125));
  const std::vector<double> short_data{1.0};
  CHECK_THROWS(target_value(c, short_data));
}

TEST_CASE("spec validation") {
  TargetSpec s{{1.0, 0.0}, {1, 1}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {{1.0, 1.0}, {1, 0}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {{1.0}, {1, 2}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("raw moments match quadrature") {
  for (double mu : {-2.0, 0.0, 1.0, 3.0}) {
    for (double var : {0.25, 1.0, 4.0}) {
      for (int v = 0; v <= 8; ++v) {
        const double ref = oracle::gaussian_moment_quadrature(mu, var, v);
        const double got = gaussian_raw_moment(mu, var, v);
        const double scale = std::max(std::abs(ref), 1e-300);
        INFO("mu=" << mu << " var=" << var << " v=" << v);
        // odd moments at mu = 0 are exactly zero
        if (mu == 0.0 && v % 2 == 1) {
          CHECK(std::abs(got) == 0.0);
        } else {
          CHECK(std::abs(got - ref) / scale <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("raw moments match 50-digit binomial expansion") {
  for (double mu : {-1.5, 0.3, 2.0}) {
    for (double var : {0.1, 1.0, 2.5}) {
      for (int v = 0; v <= 16; ++v) {
        const double ref =
            static_cast<double>(oracle::gaussian_moment_binomial(mu, var, v));
        CHECK(gaussian_raw_moment(mu, var, v) == doctest::Approx(ref).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("closed forms for E[d^2] and E[d^3]") {
  for (double mu : {-2.0, 0.0, 1.0, 3.0}) {
    for (double var : {0.25, 1.0, 4.0}) {
      CHECK(gaussian_raw_moment(mu, var, 2) == mu * mu + var);
      CHECK(gaussian_raw_moment(mu, var, 3) == doctest::Approx(mu * mu * mu + 3.0 * mu * var));
    }
  }
}

TEST_CASE("variance of the square is 2 s^2 (2 mu^2 + s^2)") {
  for (double mu : {-2.0, 0.0, 1.0, 3.0}) {
    for (double var : {0.25, 1.0, 4.0}) {
      const double m2 = oracle::gaussian_moment_quadrature(mu, var, 2);
      const double m4 = oracle::gaussian_moment_quadrature(mu, var, 4);
      const double exact = 2.0 * var * (2.0 * mu * mu + var);
      CHECK(m4 - m2 * m2 == doctest::Approx(exact).epsilon(1e-9));
      CHECK(gaussian_power_variance(mu, var, 2) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  // The shorter form 2 s^2 (mu^2 + s^2) only agrees at mu = 0.
  CHECK(gaussian_power_variance(1.0, 1.0, 2) == doctest::Approx(6.0));
  CHECK(2.0 * 1.0 * (1.0 + 1.0) == 4.0);
}

TEST_CASE("degenerate sources") {
  CHECK(gaussian_raw_moment(2.0, 0.0, 5) == 32.0);
  CHECK(gaussian_power_variance(2.0, 0.0, 3) == 0.0);
  CHECK(gaussian_raw_moment(1.0, 1.0, 0) == 1.0);
  CHECK_THROWS(gaussian_raw_moment(1.0, -1.0, 2));
  CHECK_THROWS(gaussian_raw_moment(1.0, 1.0, -1));
}

TEST_CASE("source moments and target second moment") {
  const TargetSpec s{{1.0, 2.0}, {1, 3}};
  const std::vector<double> mu{1.0, -0.5};
  const std::vector<double> var{2.0, 0.5};
  const SourceMoments m = source_moments(s, mu, var);
  CHECK(m.second[0] == doctest::Approx(3.0));
  CHECK(m.target[1] == doctest::Approx(gaussian_raw_moment(-0.5, 0.5, 3)));
  CHECK(m.target_up[1] == doctest::Approx(gaussian_raw_moment(-0.5, 0.5, 4)));
  CHECK(m.target_sq[1] == doctest::Approx(gaussian_raw_moment(-0.5, 0.5, 6)));
  // E[(d1 + 2 d2^3)^2] for independent sensors.
  const double e = m.target_sq[0] + 4.0 * m.target_sq[1] + 4.0 * m.target[0] * m.target[1];
  CHECK(target_second_moment(s, m) == doctest::Approx(e));
}
