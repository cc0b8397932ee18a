#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aircomp/detail/accumulate.hpp"
#include "aircomp/error.hpp"
#include "aircomp/evaluation.hpp"

namespace aircomp {

namespace {

struct ScalarMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const ScalarMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double delta = o.mean - mean;
    m2 += o.m2 + delta * delta * na * nb / (na + nb);
    mean += delta * nb / (na + nb);
    count += o.count;
  }

  double std_err() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

}  // namespace

GridOracleResult beta_grid_oracle(const ExperimentConfig& config, const TargetSpec& target,
                                  std::size_t resolution, std::size_t trials,
                                  std::uint64_t seed, const RunOptions& options) {
  if (resolution < 16) throw std::invalid_argument("beta_grid_oracle: resolution must be >= 16");
  if (trials == 0) throw std::invalid_argument("beta_grid_oracle: trials must be >= 1");

  ExperimentConfig c = config;
  c.policies = {Policy::kClosedFormEqual};
  const Scenario scenario(c, target);

  GridOracleResult result;
  result.center = scenario.beta_for(Policy::kClosedFormEqual, {})[0];
  if (!(result.center > 0.0)) {
    throw NumericError("beta_grid_oracle: closed-form optimum is not positive");
  }
  const std::size_t k = scenario.trajectory().size();
  for (std::size_t j = 0; j < resolution; ++j) {
    const double exponent =
        -2.0 + 4.0 * static_cast<double>(j) / static_cast<double>(resolution - 1);
    double beta = result.center * std::pow(10.0, exponent);
    if (c.beta_budget) beta = BetaVector::uniform(k, beta, c.beta_budget)[0];
    result.grid.push_back(beta);
  }

  const std::size_t chunks = (trials + detail::kChunkSize - 1) / detail::kChunkSize;
  std::vector<std::vector<ScalarMoments>> partial(chunks,
                                                  std::vector<ScalarMoments>(resolution));
  detail::for_each_chunk(trials, options.threads,
                         [&](std::size_t ch, std::size_t begin, std::size_t end) {
                           for (std::size_t t = begin; t < end; ++t) {
                             const Scenario::Realization r = scenario.realize(trial_seed(seed, t));
                             double total = 0.0;
                             for (double v : r.samples.dbar) total += v;
                             for (std::size_t j = 0; j < resolution; ++j) {
                               const double err = result.grid[j] * total - r.target_value;
                               partial[ch][j].add(err * err);
                             }
                           }
                         });

  std::vector<ScalarMoments> merged(resolution);
  for (const auto& chunk : partial) {
    for (std::size_t j = 0; j < resolution; ++j) merged[j].merge(chunk[j]);
  }

  std::size_t best = 0;
  for (std::size_t j = 0; j < resolution; ++j) {
    if (!std::isfinite(merged[j].mean)) {
      throw NumericError("beta_grid_oracle: non-finite MSE estimate at grid point " +
                         std::to_string(j));
    }
    result.grid_mse.push_back(merged[j].mean);
    result.grid_se.push_back(merged[j].std_err());
    if (merged[j].mean < merged[best].mean) best = j;
  }
  result.beta = result.grid[best];
  result.mse = result.grid_mse[best];
  result.std_err = result.grid_se[best];
  return result;
}

}  // namespace aircomp
