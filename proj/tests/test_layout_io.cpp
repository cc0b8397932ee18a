#include <doctest.h>

#include <sstream>
#include <string>

#include "aircomp/error.hpp"
#include "aircomp/layout_io.hpp"

using namespace aircomp;

TEST_CASE("layout round trip is exact") {
  Layout a;
  a.field = deploy_sensors(25, 10.0, 0.99, 1.0, 1.0, 123);
  a.field.data_mean[3] = -0.1;
  a.trajectory = plan_diameter_trajectory(7, 10.0, 50.0);
  std::ostringstream out;
  write_layout(out, a);
  std::istringstream in(out.str());
  const Layout b = read_layout(in);
  CHECK(a == b);
}

TEST_CASE("layout parse errors carry line numbers") {
  const std::string bad =
      "coverage_radius = 10\n"
      "altitude = 50\n"
      "[sensors]\n"
      "x,y,zeta,mu,var\n"
      "1,2,0.9,1\n";
  std::istringstream in(bad);
  try {
    read_layout(in);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("layout rejects sensors outside the disk and missing sections") {
  std::istringstream outside(
      "coverage_radius = 1\naltitude = 5\n[sensors]\nx,y,zeta,mu,var\n3,0,0.9,1,1\n"
      "[stops]\nx,y\n0,0\n");
  CHECK_THROWS_AS(read_layout(outside), ConfigError);
  std::istringstream no_stops(
      "coverage_radius = 1\naltitude = 5\n[sensors]\nx,y,zeta,mu,var\n0,0,0.9,1,1\n");
  CHECK_THROWS_AS(read_layout(no_stops), ConfigError);
  CHECK_THROWS_AS(load_layout("/nonexistent/layout.txt"), ConfigError);
}
