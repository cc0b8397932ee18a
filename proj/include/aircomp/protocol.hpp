#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/geometry.hpp"

namespace aircomp {

// Pilot flyover result: alpha_k = sum_i g_i(k) + n'_k.
struct SumGainSamples {
  std::vector<double> alpha;
  std::vector<double> noise_var;

  std::size_t size() const { return alpha.size(); }
};

// Data flyover result: dbar_k = sum_i g_i(k) d_i + n_k.
struct AggregateSamples {
  std::vector<double> dbar;
  std::vector<double> noise_var;

  std::size_t size() const { return dbar.size(); }
};

// Non-negative combining coefficients with an optional receiver-power budget
// sum_k beta_k <= budget. A violated budget is enforced by uniform rescaling.
class BetaVector {
 public:
  BetaVector() = default;
  explicit BetaVector(std::vector<double> beta,
                      std::optional<double> budget = std::nullopt);

  static BetaVector uniform(std::size_t k, double value,
                            std::optional<double> budget = std::nullopt) {
    return BetaVector(std::vector<double>(k, value), budget);
  }

  const std::vector<double>& values() const { return beta_; }
  double operator[](std::size_t k) const { return beta_[k]; }
  std::size_t size() const { return beta_.size(); }
  std::optional<double> budget() const { return budget_; }
  double sum() const;

 private:
  std::vector<double> beta_;
  std::optional<double> budget_;
};

SumGainSamples sampling_phase(const GainMatrix& gains, double noise_var,
                              std::uint64_t seed);

AggregateSamples computation_phase(const GainMatrix& gains, std::span<const double> data,
                                   double noise_var, std::uint64_t seed);

// d_hat = sum_k beta_k dbar_k
double estimate(const AggregateSamples& samples, const BetaVector& beta);

// Independent d_i ~ N(mu_i, sigma_i^2).
std::vector<double> draw_sensor_data(const SensorField& field, std::uint64_t seed);

}  // namespace aircomp
