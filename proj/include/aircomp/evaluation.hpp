#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/estimator.hpp"
#include "aircomp/geometry.hpp"
#include "aircomp/layout_io.hpp"
#include "aircomp/nomographic.hpp"
#include "aircomp/protocol.hpp"

namespace aircomp {

// One of the preset targets (1, 2, 3) or an explicit weight/exponent list.
struct TargetSelector {
  int preset = 1;  // 0 = custom
  std::vector<double> weights;
  std::vector<int> exponents;

  static TargetSelector from_preset(int preset) { return TargetSelector{preset, {}, {}}; }
  static TargetSelector custom(std::vector<double> weights, std::vector<int> exponents) {
    return TargetSelector{0, std::move(weights), std::move(exponents)};
  }

  std::string name() const;  // "config-1", ..., "custom"
  TargetSpec resolve(std::size_t n) const;

  friend bool operator==(const TargetSelector&, const TargetSelector&) = default;
};

// Every parameter of a Monte Carlo experiment. Defaults are the evaluation
// setup: P = 30 dBm, noise -70 dBm, H = 50 m, R = 10 m, K = 5, N = 20,
// zeta = 0.99, g0 = 0.0275. The data source statistics are not part of that
// setup and default to mu = 1, sigma^2 = 1.
struct ExperimentConfig {
  std::size_t n = 20;
  std::size_t k = 5;
  double r_cov = 10.0;
  double h = 50.0;
  double p_watts = 1.0;
  double noise_var = 1e-10;        // data flyover, sigma_{n_k}^2
  double pilot_noise_var = 1e-10;  // pilot flyover, sigma_{n'_k}^2
  double zeta = 0.99;
  double g0 = 0.0275;
  double data_mean = 1.0;
  double data_var = 1.0;
  std::vector<TargetSelector> targets{TargetSelector::from_preset(1)};
  std::vector<Policy> policies{Policy::kHeuristic, Policy::kHeuristicEqual, Policy::kBenchmark};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  bool redeploy_per_trial = true;
  std::optional<double> beta_budget;
  std::size_t oracle_resolution = 33;
  std::size_t oracle_trials = 20000;
  std::string layout;  // optional layout file; pins sensors and stops

  // Throws ConfigError.
  void validate() const;
  ChannelParams channel() const { return ChannelParams{g0, p_watts}; }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// 10 log10(mse / reference). Throws std::invalid_argument on non-positive
// input.
double to_db(double mse, double reference);

// Everything fixed for one (config, target) pair: trajectory, target,
// source moments, and the coefficient vectors of the policies that do not
// depend on the pilot samples.
class Scenario {
 public:
  Scenario(const ExperimentConfig& config, const TargetSpec& target);

  struct Realization {
    SensorField field;
    GainMatrix gains;
    SumGainSamples alphas;
    std::vector<double> data;
    AggregateSamples samples;
    double target_value = 0.0;
  };

  // Draws one complete protocol round from a trial seed.
  Realization realize(std::uint64_t trial_seed) const;

  // Coefficients `policy` would use on this realization. Throws
  // RejectedSample for sample-based policies when some alpha_k <= 0.
  BetaVector beta_for(Policy policy, const Realization& r) const;

  // Squared error of each policy on one trial, written to `out`.
  void run_trial(std::uint64_t trial_seed, std::span<const Policy> policies,
                 std::span<double> out) const;

  void set_grid_oracle_beta(double beta);

  const ExperimentConfig& config() const { return config_; }
  const TargetSpec& target() const { return target_; }
  const SourceMoments& moments() const { return moments_; }
  const Trajectory& trajectory() const { return traj_; }
  const std::optional<SensorField>& fixed_field() const { return fixed_field_; }
  const std::vector<double>& noise_vars() const { return noise_vars_; }
  // E[(d*)^2], the 0 dB reference.
  double reference() const { return reference_; }
  // Lazily computed quadrature moments of the gains.
  const GainStatistics& gain_stats() const;

 private:
  ExperimentConfig config_;
  TargetSpec target_;
  SourceMoments moments_;
  Trajectory traj_;
  std::optional<SensorField> fixed_field_;
  std::optional<GainMatrix> fixed_gains_;
  std::vector<double> noise_vars_;
  double reference_ = 0.0;
  mutable std::optional<GainStatistics> stats_;
  mutable std::optional<BetaVector> closed_form_beta_;
  std::optional<BetaVector> benchmark_beta_;
  std::optional<BetaVector> oracle_beta_;
};

// Seed of trial t under base seed s; shared by every policy (common random
// numbers).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

// Squared error (d_hat - d*)^2 of one full protocol round for the first
// configured target.
double run_trial(const ExperimentConfig& config, Policy policy, std::uint64_t trial_seed);

struct GapEstimate {
  double db = 0.0;       // 10 log10(mse_a / mse_b)
  double std_err = 0.0;  // delta-method standard error, paired trials
};

// Monte Carlo estimate for every policy of one (config, target) cell.
struct CellResult {
  std::string target;
  double axis_value = 0.0;
  std::vector<Policy> policies;
  std::vector<double> mean;
  std::vector<double> std_err;
  std::vector<double> covariance;  // P x P covariance of the policy means
  std::size_t trials_used = 0;
  std::size_t rejected = 0;
  double reference = 0.0;
  bool valid = true;
  std::string error;

  std::size_t index_of(Policy policy) const;
  double mse(Policy policy) const { return mean[index_of(policy)]; }
  double se(Policy policy) const { return std_err[index_of(policy)]; }
  double mse_db(Policy policy) const { return to_db(mse(policy), reference); }
  GapEstimate db_gap(Policy a, Policy b) const;
};

struct RunOptions {
  unsigned threads = 1;
};

// All policies share trial seeds. A trial is dropped for every policy when a
// sample-based policy rejects it. Results are reduced in a fixed chunk order,
// so they do not depend on the thread count.
CellResult estimate_cell(const ExperimentConfig& config, const TargetSelector& target,
                         const RunOptions& options = {});

struct MseEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t trials_used = 0;
  std::size_t rejected = 0;
};

MseEstimate estimate_mse(const ExperimentConfig& config, Policy policy,
                         const RunOptions& options = {});

enum class SweepAxis { kK, kN };

std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct ExperimentResult {
  SweepAxis axis = SweepAxis::kK;
  std::vector<CellResult> cells;  // value-major, then target
};

ExperimentResult sweep(const ExperimentConfig& config, SweepAxis axis,
                       std::span<const std::size_t> values, const RunOptions& options = {});

// CSV: <axis>,target,policy,mse,std_err,mse_db,trials_used
void write_results_csv(std::ostream& out, const ExperimentResult& result);
// Per-policy dB values and pairwise dB gaps.
void write_summary(std::ostream& out, const ExperimentResult& result);

// ---------------------------------------------------------------------------
// Brute-force reference minimizer
// ---------------------------------------------------------------------------

struct GridOracleResult {
  double beta = 0.0;
  double mse = 0.0;
  double std_err = 0.0;
  double center = 0.0;  // closed-form equal-beta optimum the grid is built around
  std::vector<double> grid;
  std::vector<double> grid_mse;
  std::vector<double> grid_se;
};

// Equal-beta search over `resolution` log-spaced points in
// [beta*/100, 100 beta*], each scored by Monte Carlo MSE on the same trials.
GridOracleResult beta_grid_oracle(const ExperimentConfig& config, const TargetSpec& target,
                                  std::size_t resolution, std::size_t trials,
                                  std::uint64_t seed, const RunOptions& options = {});

}  // namespace aircomp
