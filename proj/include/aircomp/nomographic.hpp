#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aircomp {

// Polynomial nomographic target d* = sum_i w_i d_i^{v_i}.
struct TargetSpec {
  std::vector<double> weights;  // w_i > 0
  std::vector<int> exponents;   // v_i >= 1

  std::size_t size() const { return weights.size(); }
  void validate() const;

  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

// The three evaluation targets:
//   1: w_i = 1, v_i = 1   (sum)
//   2: w_i = 1, v_i = 2   (sum of squares)
//   3: w_i = i, v_i = 3   (unequally weighted cubes, i = 1..N)
TargetSpec preset_target(int preset, std::size_t n);

double target_value(const TargetSpec& spec, std::span<const double> data);

// E[d^v] for d ~ N(mu, var) via m_v = mu m_{v-1} + (v-1) var m_{v-2}.
double gaussian_raw_moment(double mu, double var, int v);

// Var(d^v) = E[d^{2v}] - E[d^v]^2.
double gaussian_power_variance(double mu, double var, int v);

// Per-sensor moments of the data source that every MSE formula needs.
struct SourceMoments {
  std::vector<double> mean;        // mu_i
  std::vector<double> var;         // sigma_i^2
  std::vector<double> second;      // E[d_i^2]
  std::vector<double> target;      // E[d_i^{v_i}]
  std::vector<double> target_up;   // E[d_i^{v_i+1}]
  std::vector<double> target_sq;   // E[d_i^{2 v_i}]

  std::size_t size() const { return mean.size(); }
};

SourceMoments source_moments(const TargetSpec& spec, std::span<const double> mean,
                             std::span<const double> var);

// E[(d*)^2] for independent sensors; the reference for dB normalization.
double target_second_moment(const TargetSpec& spec, const SourceMoments& m);

}  // namespace aircomp
