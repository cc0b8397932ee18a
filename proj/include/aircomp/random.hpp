#pragma once

#include <cstdint>
#include <random>

namespace aircomp {

// Stream identifiers used when deriving per-purpose seeds from a trial seed.
enum class Stream : std::uint64_t {
  kDeployment = 1,
  kPilotNoise = 2,
  kSensorData = 3,
  kDataNoise = 4,
  kTrial = 5,
};

// SplitMix64 finalizer applied to (seed, stream). Deterministic and
// platform-independent.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
inline std::uint64_t mix_seed(std::uint64_t seed, Stream stream) {
  return mix_seed(seed, static_cast<std::uint64_t>(stream));
}

// Seeded generator with portable uniform and Gaussian variates.
// std::mt19937_64 engine with hand-written distribution transforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via the Marsaglia polar method.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aircomp
