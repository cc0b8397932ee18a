#include "aircomp/layout_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "aircomp/error.hpp"
#include "aircomp/strings.hpp"

namespace aircomp {

namespace {

enum class Section { kHeader, kSensors, kStops };

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              int line_no) {
  std::vector<double> values;
  for (const std::string& cell : split(line, ',')) {
    double v = 0.0;
    if (!parse_double(trim(cell), v)) {
      throw ConfigError("layout line " + std::to_string(line_no) +
                        ": not a number: '" + cell + "'");
    }
    values.push_back(v);
  }
  if (values.size() != expected) {
    throw ConfigError("layout line " + std::to_string(line_no) + ": expected " +
                      std::to_string(expected) + " columns");
  }
  return values;
}

}  // namespace

void write_layout(std::ostream& out, const Layout& layout) {
  const SensorField& f = layout.field;
  out << "# aircomp layout\n";
  out << "coverage_radius = " << format_double(f.coverage_radius) << '\n';
  out << "altitude = " << format_double(layout.trajectory.altitude) << '\n';
  out << "[sensors]\n";
  out << "x,y,zeta,mu,var\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.positions[i].x) << ',' << format_double(f.positions[i].y)
        << ',' << format_double(f.reflection[i]) << ','
        << format_double(f.data_mean[i]) << ',' << format_double(f.data_var[i])
        << '\n';
  }
  out << "[stops]\n";
  out << "x,y\n";
  for (const Point& s : layout.trajectory.stops) {
    out << format_double(s.x) << ',' << format_double(s.y) << '\n';
  }
}

Layout read_layout(std::istream& in) {
  Layout layout;
  Section section = Section::kHeader;
  bool expect_columns = false;
  bool have_radius = false;
  bool have_altitude = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[sensors]") {
      section = Section::kSensors;
      expect_columns = true;
      continue;
    }
    if (line == "[stops]") {
      section = Section::kStops;
      expect_columns = true;
      continue;
    }
    if (expect_columns) {
      const std::string want = section == Section::kSensors ? "x,y,zeta,mu,var" : "x,y";
      if (line != want) {
        throw ConfigError("layout line " + std::to_string(line_no) +
                          ": expected column header '" + want + "'");
      }
      expect_columns = false;
      continue;
    }
    switch (section) {
      case Section::kHeader: {
        std::string key;
        std::string value;
        if (!split_key_value(line, key, value)) {
          throw ConfigError("layout line " + std::to_string(line_no) +
                            ": expected 'key = value'");
        }
        double v = 0.0;
        if (!parse_double(value, v)) {
          throw ConfigError("layout line " + std::to_string(line_no) +
                            ": not a number: '" + value + "'");
        }
        if (key == "coverage_radius") {
          layout.field.coverage_radius = v;
          have_radius = true;
        } else if (key == "altitude") {
          layout.trajectory.altitude = v;
          have_altitude = true;
        } else {
          throw ConfigError("layout line " + std::to_string(line_no) +
                            ": unknown key '" + key + "'");
        }
        break;
      }
      case Section::kSensors: {
        const auto row = parse_row(line, 5, line_no);
        layout.field.positions.push_back({row[0], row[1]});
        layout.field.reflection.push_back(row[2]);
        layout.field.data_mean.push_back(row[3]);
        layout.field.data_var.push_back(row[4]);
        break;
      }
      case Section::kStops: {
        const auto row = parse_row(line, 2, line_no);
        layout.trajectory.stops.push_back({row[0], row[1]});
        break;
      }
    }
  }
  if (!have_radius || !have_altitude) {
    throw ConfigError("layout is missing coverage_radius or altitude");
  }
  try {
    layout.field.validate();
    layout.trajectory.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("layout: ") + e.what());
  }
  return layout;
}

void save_layout(const std::string& path, const Layout& layout) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write layout file '" + path + "'");
  write_layout(out, layout);
}

Layout load_layout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read layout file '" + path + "'");
  return read_layout(in);
}

}  // namespace aircomp
