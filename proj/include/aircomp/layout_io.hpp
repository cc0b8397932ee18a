#pragma once

#include <iosfwd>
#include <string>

#include "aircomp/geometry.hpp"

namespace aircomp {

struct Layout {
  SensorField field;
  Trajectory trajectory;

  friend bool operator==(const Layout&, const Layout&) = default;
};

// Plain-text layout file:
//
//   # comment
//   coverage_radius = 10
//   altitude = 50
//   [sensors]
//   x,y,zeta,mu,var
//   1.25,-3.5,0.99,1,1
//   ...
//   [stops]
//   x,y
//   -10,0
//   ...
//
// Numbers are written with 17 significant digits so a round trip is exact.
void write_layout(std::ostream& out, const Layout& layout);
Layout read_layout(std::istream& in);

void save_layout(const std::string& path, const Layout& layout);
Layout load_layout(const std::string& path);

}  // namespace aircomp
