#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aircomp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Backscatter sensors on a disk of radius coverage_radius centered at the
// origin, together with the Gaussian statistics of each sensor's reading.
struct SensorField {
  double coverage_radius = 0.0;
  std::vector<Point> positions;
  std::vector<double> reflection;  // zeta_i in (0, 1]
  std::vector<double> data_mean;   // mu_i
  std::vector<double> data_var;    // sigma_i^2 >= 0

  std::size_t size() const { return positions.size(); }

  // Throws std::invalid_argument when any invariant is broken.
  void validate() const;

  friend bool operator==(const SensorField&, const SensorField&) = default;
};

// Fixed-altitude flight plan: the UAV hovers at each stop in order.
struct Trajectory {
  double altitude = 0.0;
  std::vector<Point> stops;

  std::size_t size() const { return stops.size(); }
  void validate() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Area-uniform deployment: radius = r_cov * sqrt(u), angle = 2*pi*t, with
// (u, t) drawn per sensor in that order. All sensors share zeta/mean/var.
SensorField deploy_sensors(std::size_t n, double r_cov, double zeta,
                           double data_mean, double data_var,
                           std::uint64_t seed);

// K stops equally spaced on the diameter from (-r_cov, 0) to (r_cov, 0),
// endpoints included; a single stop sits at the center.
Trajectory plan_diameter_trajectory(std::size_t k, double r_cov, double h);

double distance(const SensorField& field, std::size_t i,
                const Trajectory& traj, std::size_t k);

// Largest sensor-to-UAV distance possible when both the sensor and the stop
// lie within the disk: h * sqrt(1 + (2 r_cov / h)^2).
double max_distance_bound(double r_cov, double h);

}  // namespace aircomp
