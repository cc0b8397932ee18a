#include "aircomp/nomographic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aircomp {

void TargetSpec::validate() const {
  if (weights.empty()) throw std::invalid_argument("target has no sensors");
  if (weights.size() != exponents.size()) {
    throw std::invalid_argument("target weights and exponents differ in length");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("target weights must be > 0");
    if (exponents[i] < 1) throw std::invalid_argument("target exponents must be >= 1");
  }
}

TargetSpec preset_target(int preset, std::size_t n) {
  if (n == 0) throw std::invalid_argument("preset_target: n must be >= 1");
  TargetSpec spec;
  switch (preset) {
    case 1:
      spec.weights.assign(n, 1.0);
      spec.exponents.assign(n, 1);
      break;
    case 2:
      spec.weights.assign(n, 1.0);
      spec.exponents.assign(n, 2);
      break;
    case 3:
      for (std::size_t i = 0; i < n; ++i) spec.weights.push_back(static_cast<double>(i + 1));
      spec.exponents.assign(n, 3);
      break;
    default:
      throw std::invalid_argument("preset_target: unknown preset " + std::to_string(preset));
  }
  return spec;
}

double target_value(const TargetSpec& spec, std::span<const double> data) {
  if (data.size() != spec.size()) {
    throw std::invalid_argument("target_value: data length does not match target");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double p = 1.0;
    for (int e = 0; e < spec.exponents[i]; ++e) p *= data[i];
    sum += spec.weights[i] * p;
  }
  return sum;
}

double gaussian_raw_moment(double mu, double var, int v) {
  if (v < 0) throw std::invalid_argument("gaussian_raw_moment: negative order");
  if (!(var >= 0.0)) throw std::invalid_argument("gaussian_raw_moment: negative variance");
  if (v == 0) return 1.0;
  double prev = 1.0;  // m_{j-2}
  double cur = mu;    // m_{j-1}
  for (int j = 2; j <= v; ++j) {
    const double next = mu * cur + static_cast<double>(j - 1) * var * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gaussian_power_variance(double mu, double var, int v) {
  if (v < 1) throw std::invalid_argument("gaussian_power_variance: order must be >= 1");
  const double m = gaussian_raw_moment(mu, var, v);
  const double m2 = gaussian_raw_moment(mu, var, 2 * v);
  return std::max(0.0, m2 - m * m);
}

SourceMoments source_moments(const TargetSpec& spec, std::span<const double> mean,
                             std::span<const double> var) {
  spec.validate();
  if (mean.size() != spec.size() || var.size() != spec.size()) {
    throw std::invalid_argument("source_moments: sensor count does not match target");
  }
  SourceMoments m;
  m.mean.assign(mean.begin(), mean.end());
  m.var.assign(var.begin(), var.end());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const int v = spec.exponents[i];
    m.second.push_back(gaussian_raw_moment(mean[i], var[i], 2));
    m.target.push_back(gaussian_raw_moment(mean[i], var[i], v));
    m.target_up.push_back(gaussian_raw_moment(mean[i], var[i], v + 1));
    m.target_sq.push_back(gaussian_raw_moment(mean[i], var[i], 2 * v));
  }
  return m;
}

double target_second_moment(const TargetSpec& spec, const SourceMoments& m) {
  double var_sum = 0.0;
  double mean_sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = spec.weights[i];
    var_sum += w * w * std::max(0.0, m.target_sq[i] - m.target[i] * m.target[i]);
    mean_sum += w * m.target[i];
  }
  return var_sum + mean_sum * mean_sum;
}

}  // namespace aircomp
