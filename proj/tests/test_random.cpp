#include <doctest.h>

#include <cmath>
#include <set>

#include "aircomp/random.hpp"

using namespace aircomp;

TEST_CASE("mix_seed separates streams and seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) {
    for (std::uint64_t st = 1; st <= 5; ++st) seen.insert(mix_seed(s, st));
  }
  CHECK(seen.size() == 500);
  CHECK(mix_seed(7, Stream::kTrial) == mix_seed(7, 5));
}

TEST_CASE("rng is reproducible") {
  Rng a(42), b(42);
  for (int j = 0; j < 1000; ++j) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("uniform lies in [0, 1) with the right mean") {
  Rng rng(3);
  double sum = 0.0;
  const int n = 200000;
  for (int j = 0; j < n; ++j) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("normal has unit variance") {
  Rng rng(9);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(std::abs(s1 / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("normal with mean and sd") {
  Rng a(5), b(5);
  for (int j = 0; j < 100; ++j) CHECK(a.normal(2.0, 3.0) == doctest::Approx(2.0 + 3.0 * b.normal()));
}
