#include "aircomp/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aircomp {

ChannelParams ChannelParams::from_carrier(double carrier_hz, double tx_power_w) {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  ChannelParams p;
  p.g0 = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
  p.tx_power_w = tx_power_w;
  p.validate();
  return p;
}

void ChannelParams::validate() const {
  if (!(g0 > 0.0)) throw std::invalid_argument("g0 must be > 0");
  if (!(tx_power_w > 0.0)) throw std::invalid_argument("transmit power must be > 0");
}

double channel_power_gain(const ChannelParams& params, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("channel_power_gain: distance must be > 0");
  return params.g0 * params.g0 / (d * d);
}

ReceivedPowers received_powers(const ChannelParams& params, double zeta, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("received_powers: distance must be > 0");
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("received_powers: zeta must lie in [0, 1]");
  }
  const double h = channel_power_gain(params, d);
  const double amplitude = h * std::sqrt(params.tx_power_w * zeta);
  return {h * params.tx_power_w, amplitude * amplitude};
}

GainMatrix::GainMatrix(std::size_t sensors, std::size_t stops)
    : sensors_(sensors), stops_(stops), g_(sensors * stops), h_(sensors * stops) {}

double GainMatrix::column_sum(std::size_t k) const {
  if (k >= stops_) throw std::out_of_range("GainMatrix::column_sum: stop index");
  double sum = 0.0;
  for (std::size_t i = 0; i < sensors_; ++i) sum += g_[i * stops_ + k];
  return sum;
}

GainMatrix effective_gain_matrix(const SensorField& field, const Trajectory& traj,
                                 const ChannelParams& params) {
  field.validate();
  traj.validate();
  params.validate();
  GainMatrix gains(field.size(), traj.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double amplitude = std::sqrt(field.reflection[i] * params.tx_power_w);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double h = channel_power_gain(params, distance(field, i, traj, k));
      gains.set(i, k, h, amplitude * h);
    }
  }
  return gains;
}

}  // namespace aircomp
