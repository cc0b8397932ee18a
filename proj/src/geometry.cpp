#include "aircomp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aircomp/random.hpp"

namespace aircomp {

void SensorField::validate() const {
  const std::size_t n = positions.size();
  if (n == 0) {
    throw std::invalid_argument("sensor field is empty");
  }
  if (reflection.size() != n || data_mean.size() != n || data_var.size() != n) {
    throw std::invalid_argument("sensor field lists differ in length");
  }
  if (!(coverage_radius > 0.0)) {
    throw std::invalid_argument("coverage radius must be positive");
  }
  // 1e-12 relative slack on the radius
  const double r2 = coverage_radius * coverage_radius * (1.0 + 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = positions[i];
    if (p.x * p.x + p.y * p.y > r2) {
      throw std::invalid_argument("sensor " + std::to_string(i) +
                                  " lies outside the coverage disk");
    }
    if (!(reflection[i] > 0.0 && reflection[i] <= 1.0)) {
      throw std::invalid_argument("reflection coefficient of sensor " +
                                  std::to_string(i) + " outside (0, 1]");
    }
    if (!(data_var[i] >= 0.0) || !std::isfinite(data_mean[i])) {
      throw std::invalid_argument("invalid data statistics for sensor " +
                                  std::to_string(i));
    }
  }
}

void Trajectory::validate() const {
  if (stops.empty()) {
    throw std::invalid_argument("trajectory has no stops");
  }
  if (!(altitude > 0.0)) {
    throw std::invalid_argument("altitude must be positive");
  }
}

SensorField deploy_sensors(std::size_t n, double r_cov, double zeta,
                           double data_mean, double data_var,
                           std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("deploy_sensors: n must be >= 1");
  if (!(r_cov > 0.0)) throw std::invalid_argument("deploy_sensors: r_cov must be > 0");
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("deploy_sensors: zeta must lie in (0, 1]");
  }
  if (!(data_var >= 0.0)) throw std::invalid_argument("deploy_sensors: data_var must be >= 0");

  SensorField field;
  field.coverage_radius = r_cov;
  field.positions.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = r_cov * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    field.positions.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  field.reflection.assign(n, zeta);
  field.data_mean.assign(n, data_mean);
  field.data_var.assign(n, data_var);
  return field;
}

Trajectory plan_diameter_trajectory(std::size_t k, double r_cov, double h) {
  if (k == 0) throw std::invalid_argument("plan_diameter_trajectory: k must be >= 1");
  if (!(r_cov > 0.0)) throw std::invalid_argument("plan_diameter_trajectory: r_cov must be > 0");
  if (!(h > 0.0)) throw std::invalid_argument("plan_diameter_trajectory: h must be > 0");

  Trajectory traj;
  traj.altitude = h;
  traj.stops.reserve(k);
  if (k == 1) {
    traj.stops.push_back({0.0, 0.0});
    return traj;
  }
  const double step = 2.0 * r_cov / static_cast<double>(k - 1);
  for (std::size_t j = 0; j < k; ++j) {
    traj.stops.push_back({-r_cov + step * static_cast<double>(j), 0.0});
  }
  // Pin the far endpoint so it is exactly +r_cov.
  traj.stops.back().x = r_cov;
  return traj;
}

double distance(const SensorField& field, std::size_t i, const Trajectory& traj,
                std::size_t k) {
  if (i >= field.size()) throw std::out_of_range("distance: sensor index out of range");
  if (k >= traj.size()) throw std::out_of_range("distance: stop index out of range");
  const double dx = traj.stops[k].x - field.positions[i].x;
  const double dy = traj.stops[k].y - field.positions[i].y;
  return std::sqrt(traj.altitude * traj.altitude + dx * dx + dy * dy);
}

double max_distance_bound(double r_cov, double h) {
  const double ratio = 2.0 * r_cov / h;
  return h * std::sqrt(1.0 + ratio * ratio);
}

}  // namespace aircomp
