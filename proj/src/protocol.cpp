#include "aircomp/protocol.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aircomp/random.hpp"

namespace aircomp {

BetaVector::BetaVector(std::vector<double> beta, std::optional<double> budget)
    : beta_(std::move(beta)), budget_(budget) {
  for (double b : beta_) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("beta coefficients must be finite and >= 0");
    }
  }
  if (budget_) {
    if (!(*budget_ > 0.0)) throw std::invalid_argument("beta budget must be > 0");
    const double total = sum();
    if (total > *budget_) {
      const double scale = *budget_ / total;
      for (double& b : beta_) b *= scale;
      // Rounding can leave the sum one ulp above the budget.
      while (sum() > *budget_) {
        for (double& b : beta_) b = std::nextafter(b, 0.0);
      }
    }
  }
}

double BetaVector::sum() const { return std::accumulate(beta_.begin(), beta_.end(), 0.0); }

SumGainSamples sampling_phase(const GainMatrix& gains, double noise_var,
                              std::uint64_t seed) {
  if (!(noise_var >= 0.0)) throw std::invalid_argument("sampling_phase: noise_var must be >= 0");
  const std::vector<double> ones(gains.sensors(), 1.0);
  const AggregateSamples pilot = computation_phase(gains, ones, noise_var, seed);
  return {pilot.dbar, pilot.noise_var};
}

AggregateSamples computation_phase(const GainMatrix& gains, std::span<const double> data,
                                   double noise_var, std::uint64_t seed) {
  if (!(noise_var >= 0.0)) {
    throw std::invalid_argument("computation_phase: noise_var must be >= 0");
  }
  if (data.size() != gains.sensors()) {
    throw std::invalid_argument("computation_phase: data length does not match sensors");
  }
  AggregateSamples out;
  out.dbar.assign(gains.stops(), 0.0);
  out.noise_var.assign(gains.stops(), noise_var);
  for (std::size_t i = 0; i < gains.sensors(); ++i) {
    for (std::size_t k = 0; k < gains.stops(); ++k) out.dbar[k] += gains.g(i, k) * data[i];
  }
  if (noise_var > 0.0) {
    Rng rng(seed);
    const double sd = std::sqrt(noise_var);
    for (double& v : out.dbar) v += sd * rng.normal();
  }
  return out;
}

double estimate(const AggregateSamples& samples, const BetaVector& beta) {
  if (samples.size() != beta.size()) {
    throw std::invalid_argument("estimate: beta length does not match sample count");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) acc += beta[k] * samples.dbar[k];
  return acc;
}

std::vector<double> draw_sensor_data(const SensorField& field, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> data(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    data[i] = field.data_mean[i] + std::sqrt(field.data_var[i]) * rng.normal();
  }
  return data;
}

}  // namespace aircomp
