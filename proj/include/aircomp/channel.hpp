#pragma once

#include <cstddef>
#include <vector>

#include "aircomp/geometry.hpp"

namespace aircomp {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

// Free-space link parameters. Powers are in watts throughout; dBm appears
// only at the command-line boundary.
struct ChannelParams {
  double g0 = 0.0275;        // amplitude gain at the 1 m reference distance
  double tx_power_w = 1.0;   // carrier power P

  // g0 = c / (4 pi f).
  static ChannelParams from_carrier(double carrier_hz, double tx_power_w);

  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

// h = g0^2 / d^2, the round-trip channel power gain.
double channel_power_gain(const ChannelParams& params, double d);

struct ReceivedPowers {
  double forward_w = 0.0;      // at the sensor: g0^2 P / d^2
  double backscatter_w = 0.0;  // back at the UAV: (g0^2 sqrt(P zeta) / d^2)^2
};

ReceivedPowers received_powers(const ChannelParams& params, double zeta, double d);

// Row-major N x K matrices of channel power gains h_i(k) and effective gains
// g_i(k) = sqrt(zeta_i P) h_i(k).
class GainMatrix {
 public:
  GainMatrix() = default;
  GainMatrix(std::size_t sensors, std::size_t stops);

  std::size_t sensors() const { return sensors_; }
  std::size_t stops() const { return stops_; }

  double g(std::size_t i, std::size_t k) const { return g_[i * stops_ + k]; }
  double h(std::size_t i, std::size_t k) const { return h_[i * stops_ + k]; }
  void set(std::size_t i, std::size_t k, double h, double g) {
    h_[i * stops_ + k] = h;
    g_[i * stops_ + k] = g;
  }

  // sum_i g_i(k)
  double column_sum(std::size_t k) const;

 private:
  std::size_t sensors_ = 0;
  std::size_t stops_ = 0;
  std::vector<double> g_;
  std::vector<double> h_;
};

GainMatrix effective_gain_matrix(const SensorField& field, const Trajectory& traj,
                                 const ChannelParams& params);

}  // namespace aircomp
