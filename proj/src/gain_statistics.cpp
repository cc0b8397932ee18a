#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aircomp/error.hpp"
#include "aircomp/estimator.hpp"

namespace aircomp {

namespace {

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const {
    gsl_integration_glfixed_table_free(t);
  }
};

// E[g(k)] and E[g(k) g(k')] on one radial x angular grid. The radial variable
// is u = (r / R)^2, which is uniform for an area-uniform point.
void integrate(const Trajectory& traj, double r_cov, double amplitude, double g0_sq,
               std::size_t radial, std::size_t angular, std::vector<double>& mean,
               std::vector<double>& second) {
  const std::size_t k = traj.size();
  mean.assign(k, 0.0);
  second.assign(k * k, 0.0);

  std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
      gsl_integration_glfixed_table_alloc(radial));
  if (!table) throw NumericError("gain_statistics: cannot allocate quadrature table");

  const double h2 = traj.altitude * traj.altitude;
  std::vector<double> g(k);
  std::vector<double> ring_mean(k);
  std::vector<double> ring_second(k * k);
  for (std::size_t a = 0; a < radial; ++a) {
    double u = 0.0;
    double wu = 0.0;
    gsl_integration_glfixed_point(0.0, 1.0, a, &u, &wu, table.get());
    const double r = r_cov * std::sqrt(u);
    std::fill(ring_mean.begin(), ring_mean.end(), 0.0);
    std::fill(ring_second.begin(), ring_second.end(), 0.0);
    for (std::size_t b = 0; b < angular; ++b) {
      const double theta =
          2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(angular);
      const double x = r * std::cos(theta);
      const double y = r * std::sin(theta);
      for (std::size_t j = 0; j < k; ++j) {
        const double dx = traj.stops[j].x - x;
        const double dy = traj.stops[j].y - y;
        g[j] = amplitude * g0_sq / (h2 + dx * dx + dy * dy);
      }
      for (std::size_t j = 0; j < k; ++j) {
        ring_mean[j] += g[j];
        for (std::size_t l = j; l < k; ++l) ring_second[j * k + l] += g[j] * g[l];
      }
    }
    const double w = wu / static_cast<double>(angular);
    for (std::size_t j = 0; j < k; ++j) {
      mean[j] += w * ring_mean[j];
      for (std::size_t l = j; l < k; ++l) second[j * k + l] += w * ring_second[j * k + l];
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < j; ++l) second[j * k + l] = second[l * k + j];
  }
}

double max_relative_change(const std::vector<double>& coarse, const std::vector<double>& fine) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double scale = std::abs(fine[i]);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(fine[i] - coarse[i]) / scale);
  }
  return worst;
}

}  // namespace

GainStatistics gain_statistics(const Trajectory& traj, double r_cov,
                               const ChannelParams& params, double zeta,
                               const QuadratureOptions& options) {
  traj.validate();
  params.validate();
  if (!(r_cov > 0.0)) throw std::invalid_argument("gain_statistics: r_cov must be > 0");
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("gain_statistics: zeta must lie in (0, 1]");
  }
  if (options.radial_nodes < 2 || options.angular_nodes < 4) {
    throw std::invalid_argument("gain_statistics: too few quadrature nodes");
  }

  const double amplitude = std::sqrt(zeta * params.tx_power_w);
  const double g0_sq = params.g0 * params.g0;

  std::vector<double> mean_coarse;
  std::vector<double> second_coarse;
  integrate(traj, r_cov, amplitude, g0_sq, options.radial_nodes, options.angular_nodes,
            mean_coarse, second_coarse);
  GainStatistics stats;
  integrate(traj, r_cov, amplitude, g0_sq, 2 * options.radial_nodes,
            2 * options.angular_nodes, stats.mean_g, stats.second);

  const double change = std::max(max_relative_change(mean_coarse, stats.mean_g),
                                 max_relative_change(second_coarse, stats.second));
  if (!(change <= options.tolerance)) {
    throw NumericError("gain_statistics: quadrature did not converge (relative change " +
                       std::to_string(change) + ")");
  }

  const std::size_t k = traj.size();
  stats.var_g.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    stats.var_g[j] = std::max(0.0, stats.second[j * k + j] - stats.mean_g[j] * stats.mean_g[j]);
  }
  return stats;
}

}  // namespace aircomp
