#include "aircomp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "aircomp/detail/accumulate.hpp"
#include "aircomp/error.hpp"
#include "aircomp/random.hpp"
#include "aircomp/strings.hpp"

namespace aircomp {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

std::string TargetSelector::name() const {
  if (preset == 0) return "custom";
  return "config-" + std::to_string(preset);
}

TargetSpec TargetSelector::resolve(std::size_t n) const {
  if (preset != 0) return preset_target(preset, n);
  if (weights.size() != n || exponents.size() != n) {
    throw ConfigError("custom target has " + std::to_string(weights.size()) +
                      " weights and " + std::to_string(exponents.size()) +
                      " exponents but there are " + std::to_string(n) + " sensors");
  }
  TargetSpec spec{weights, exponents};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("custom target: ") + e.what());
  }
  return spec;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(n >= 1, "n must be >= 1");
  require(k >= 1, "k must be >= 1");
  require(r_cov > 0.0 && std::isfinite(r_cov), "r_cov must be > 0");
  require(h > 0.0 && std::isfinite(h), "h must be > 0");
  require(p_watts > 0.0 && std::isfinite(p_watts), "p_watts must be > 0");
  require(noise_var >= 0.0 && std::isfinite(noise_var), "noise_var must be >= 0");
  require(pilot_noise_var >= 0.0 && std::isfinite(pilot_noise_var),
          "pilot_noise_var must be >= 0");
  require(zeta > 0.0 && zeta <= 1.0, "zeta must lie in (0, 1]");
  require(g0 > 0.0 && std::isfinite(g0), "g0 must be > 0");
  require(std::isfinite(data_mean), "data_mean must be finite");
  require(data_var >= 0.0 && std::isfinite(data_var), "data_var must be >= 0");
  require(!targets.empty(), "at least one target is required");
  for (const TargetSelector& t : targets) {
    require(t.preset >= 0 && t.preset <= 3, "unknown target preset");
    if (t.preset == 0) {
      require(!t.weights.empty() && t.weights.size() == t.exponents.size(),
              "custom target needs equal-length, non-empty weights and exponents");
    }
  }
  require(!policies.empty(), "at least one policy is required");
  for (std::size_t a = 0; a < policies.size(); ++a) {
    for (std::size_t b = a + 1; b < policies.size(); ++b) {
      require(policies[a] != policies[b], "policies must not repeat");
    }
  }
  require(trials >= 1, "trials must be >= 1");
  require(!beta_budget || (*beta_budget > 0.0 && std::isfinite(*beta_budget)),
          "beta_budget must be > 0");
  require(oracle_resolution >= 16, "oracle_resolution must be >= 16");
  require(oracle_trials >= 1, "oracle_trials must be >= 1");
}

double to_db(double mse, double reference) {
  if (!(mse > 0.0) || !(reference > 0.0)) {
    throw std::invalid_argument("to_db: arguments must be positive");
  }
  return 10.0 * std::log10(mse / reference);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
  return mix_seed(mix_seed(base_seed, Stream::kTrial), static_cast<std::uint64_t>(trial));
}

std::string_view axis_name(SweepAxis axis) { return axis == SweepAxis::kK ? "k" : "n"; }

SweepAxis parse_axis(std::string_view name) {
  if (name == "k" || name == "K") return SweepAxis::kK;
  if (name == "n" || name == "N") return SweepAxis::kN;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected k or n)");
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

namespace {

bool contains(const std::vector<Policy>& policies, Policy p) {
  return std::find(policies.begin(), policies.end(), p) != policies.end();
}

std::size_t resolve_sensor_count(const ExperimentConfig& config,
                                 const std::optional<Layout>& layout) {
  return layout ? layout->field.size() : config.n;
}

}  // namespace

Scenario::Scenario(const ExperimentConfig& config, const TargetSpec& target)
    : config_(config), target_(target) {
  config_.validate();
  const ChannelParams params = config_.channel();

  std::optional<Layout> layout;
  if (!config_.layout.empty()) layout = load_layout(config_.layout);

  const std::size_t n = resolve_sensor_count(config_, layout);
  if (target_.size() != n) {
    throw ConfigError("target covers " + std::to_string(target_.size()) +
                      " sensors but the deployment has " + std::to_string(n));
  }

  if (layout) {
    traj_ = layout->trajectory;
    fixed_field_ = layout->field;
  } else {
    traj_ = plan_diameter_trajectory(config_.k, config_.r_cov, config_.h);
    if (!config_.redeploy_per_trial) {
      fixed_field_ = deploy_sensors(n, config_.r_cov, config_.zeta, config_.data_mean,
                                    config_.data_var,
                                    mix_seed(config_.seed, Stream::kDeployment));
    }
  }
  if (fixed_field_) fixed_gains_ = effective_gain_matrix(*fixed_field_, traj_, params);

  if (fixed_field_) {
    moments_ = source_moments(target_, fixed_field_->data_mean, fixed_field_->data_var);
  } else {
    const std::vector<double> mean(n, config_.data_mean);
    const std::vector<double> var(n, config_.data_var);
    moments_ = source_moments(target_, mean, var);
  }
  noise_vars_.assign(traj_.size(), config_.noise_var);
  reference_ = target_second_moment(target_, moments_);
  benchmark_beta_ = beta_benchmark(traj_, params, config_.zeta, n, config_.beta_budget);

  if (contains(config_.policies, Policy::kClosedFormEqual) ||
      contains(config_.policies, Policy::kGridOracle)) {
    gain_stats();
    beta_for(Policy::kClosedFormEqual, Realization{});
  }
}

const GainStatistics& Scenario::gain_stats() const {
  if (!stats_) {
    const double r_cov = fixed_field_ ? fixed_field_->coverage_radius : config_.r_cov;
    stats_ = gain_statistics(traj_, r_cov, config_.channel(), config_.zeta);
  }
  return *stats_;
}

void Scenario::set_grid_oracle_beta(double beta) {
  oracle_beta_ = BetaVector::uniform(traj_.size(), beta, config_.beta_budget);
}

Scenario::Realization Scenario::realize(std::uint64_t seed) const {
  Realization r;
  if (fixed_field_) {
    r.field = *fixed_field_;
    r.gains = *fixed_gains_;
  } else {
    r.field = deploy_sensors(config_.n, config_.r_cov, config_.zeta, config_.data_mean,
                             config_.data_var, mix_seed(seed, Stream::kDeployment));
    r.gains = effective_gain_matrix(r.field, traj_, config_.channel());
  }
  r.alphas = sampling_phase(r.gains, config_.pilot_noise_var, mix_seed(seed, Stream::kPilotNoise));
  r.data = draw_sensor_data(r.field, mix_seed(seed, Stream::kSensorData));
  r.samples = computation_phase(r.gains, r.data, config_.noise_var,
                                mix_seed(seed, Stream::kDataNoise));
  r.target_value = target_value(target_, r.data);
  return r;
}

BetaVector Scenario::beta_for(Policy policy, const Realization& r) const {
  switch (policy) {
    case Policy::kClosedFormEqual:
      if (!closed_form_beta_) {
        const double b = beta_equal_optimal(target_, gain_stats(), moments_, noise_vars_);
        closed_form_beta_ = BetaVector::uniform(traj_.size(), std::max(0.0, b), config_.beta_budget);
      }
      return *closed_form_beta_;
    case Policy::kHeuristic:
      return beta_heuristic(r.alphas, target_, moments_, noise_vars_, config_.beta_budget);
    case Policy::kHeuristicEqual:
      return BetaVector::uniform(traj_.size(),
                                 beta_heuristic_equal(r.alphas, target_, moments_, noise_vars_),
                                 config_.beta_budget);
    case Policy::kBenchmark:
      return *benchmark_beta_;
    case Policy::kGridOracle:
      if (!oracle_beta_) throw std::logic_error("grid-oracle coefficients have not been computed");
      return *oracle_beta_;
  }
  throw std::logic_error("unhandled policy");
}

void Scenario::run_trial(std::uint64_t seed, std::span<const Policy> policies,
                         std::span<double> out) const {
  if (out.size() != policies.size()) throw std::invalid_argument("run_trial: output size");
  const Realization r = realize(seed);
  for (std::size_t j = 0; j < policies.size(); ++j) {
    const double err = estimate(r.samples, beta_for(policies[j], r)) - r.target_value;
    out[j] = err * err;
  }
}

namespace {

std::uint64_t oracle_seed(std::uint64_t base) { return mix_seed(base, 0x6f7261636c65ULL); }

void attach_grid_oracle(Scenario& scenario, const RunOptions& options) {
  const ExperimentConfig& c = scenario.config();
  const GridOracleResult oracle = beta_grid_oracle(c, scenario.target(), c.oracle_resolution,
                                                   c.oracle_trials, oracle_seed(c.seed), options);
  scenario.set_grid_oracle_beta(oracle.beta);
}

Scenario make_scenario(const ExperimentConfig& config, const TargetSelector& target) {
  config.validate();
  std::size_t n = config.n;
  if (!config.layout.empty()) n = load_layout(config.layout).field.size();
  return Scenario(config, target.resolve(n));
}

}  // namespace

double run_trial(const ExperimentConfig& config, Policy policy, std::uint64_t seed) {
  ExperimentConfig c = config;
  c.policies = {policy};
  Scenario scenario = make_scenario(c, c.targets.front());
  if (policy == Policy::kGridOracle) attach_grid_oracle(scenario, {});
  double out = 0.0;
  scenario.run_trial(seed, std::span<const Policy>(&policy, 1), std::span<double>(&out, 1));
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimation
// ---------------------------------------------------------------------------

std::size_t CellResult::index_of(Policy policy) const {
  for (std::size_t j = 0; j < policies.size(); ++j) {
    if (policies[j] == policy) return j;
  }
  throw std::out_of_range("policy '" + std::string(policy_name(policy)) + "' is not in this cell");
}

GapEstimate CellResult::db_gap(Policy a, Policy b) const {
  const std::size_t ia = index_of(a);
  const std::size_t ib = index_of(b);
  const std::size_t p = policies.size();
  const double ma = mean[ia];
  const double mb = mean[ib];
  GapEstimate gap;
  gap.db = 10.0 * std::log10(ma / mb);
  const double rel = covariance[ia * p + ia] / (ma * ma) + covariance[ib * p + ib] / (mb * mb) -
                     2.0 * covariance[ia * p + ib] / (ma * mb);
  gap.std_err = 10.0 / std::numbers::ln10 * std::sqrt(std::max(0.0, rel));
  return gap;
}

CellResult estimate_cell(const ExperimentConfig& config, const TargetSelector& target,
                         const RunOptions& options) {
  Scenario scenario = make_scenario(config, target);
  const std::vector<Policy>& policies = config.policies;
  if (contains(policies, Policy::kGridOracle)) attach_grid_oracle(scenario, options);

  const std::size_t p = policies.size();
  const std::size_t chunks = (config.trials + detail::kChunkSize - 1) / detail::kChunkSize;
  std::vector<detail::MomentAccumulator> partial(chunks, detail::MomentAccumulator(p));
  std::vector<std::size_t> rejected(chunks, 0);

  detail::for_each_chunk(config.trials, options.threads,
                         [&](std::size_t c, std::size_t begin, std::size_t end) {
                           std::vector<double> errors(p);
                           for (std::size_t t = begin; t < end; ++t) {
                             try {
                               scenario.run_trial(trial_seed(config.seed, t), policies, errors);
                             } catch (const RejectedSample&) {
                               ++rejected[c];
                               continue;
                             }
                             partial[c].add(errors);
                           }
                         });

  detail::MomentAccumulator total(p);
  CellResult cell;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.merge(partial[c]);
    cell.rejected += rejected[c];
  }
  if (total.count() == 0) {
    throw NumericError("all " + std::to_string(config.trials) +
                       " trials were rejected (non-positive sum-gain samples)");
  }

  cell.target = target.name();
  cell.policies = policies;
  cell.trials_used = total.count();
  cell.reference = scenario.reference();
  cell.covariance.resize(p * p);
  for (std::size_t a = 0; a < p; ++a) {
    cell.mean.push_back(total.mean(a));
    cell.std_err.push_back(std::sqrt(std::max(0.0, total.mean_covariance(a, a))));
    for (std::size_t b = 0; b < p; ++b) cell.covariance[a * p + b] = total.mean_covariance(a, b);
  }
  return cell;
}

MseEstimate estimate_mse(const ExperimentConfig& config, Policy policy,
                         const RunOptions& options) {
  ExperimentConfig c = config;
  c.policies = {policy};
  const CellResult cell = estimate_cell(c, c.targets.front(), options);
  return {cell.mean[0], cell.std_err[0], cell.trials_used, cell.rejected};
}

ExperimentResult sweep(const ExperimentConfig& config, SweepAxis axis,
                       std::span<const std::size_t> values, const RunOptions& options) {
  if (values.empty()) throw ConfigError("sweep: no axis values");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] == 0) throw ConfigError("sweep: axis values must be >= 1");
    if (j > 0 && values[j] <= values[j - 1]) {
      throw ConfigError("sweep: axis values must be strictly ascending");
    }
  }
  if (!config.layout.empty()) throw ConfigError("sweep: a pinned layout cannot be swept");
  config.validate();

  ExperimentResult result;
  result.axis = axis;
  for (std::size_t value : values) {
    ExperimentConfig c = config;
    (axis == SweepAxis::kK ? c.k : c.n) = value;
    for (const TargetSelector& target : config.targets) {
      CellResult cell;
      try {
        cell = estimate_cell(c, target, options);
      } catch (const std::exception& e) {
        cell = CellResult{};
        cell.target = target.name();
        cell.policies = c.policies;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.mean.assign(c.policies.size(), nan);
        cell.std_err.assign(c.policies.size(), nan);
        cell.covariance.assign(c.policies.size() * c.policies.size(), nan);
        cell.reference = nan;
        cell.valid = false;
        cell.error = e.what();
      }
      cell.axis_value = static_cast<double>(value);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double safe_db(double mse, double reference) {
  if (!(mse > 0.0) || !(reference > 0.0)) {
    return mse == 0.0 ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::quiet_NaN();
  }
  return to_db(mse, reference);
}

}  // namespace

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
  out << axis_name(result.axis) << ",target,policy,mse,std_err,mse_db,trials_used\n";
  for (const CellResult& cell : result.cells) {
    for (std::size_t j = 0; j < cell.policies.size(); ++j) {
      out << static_cast<std::size_t>(cell.axis_value) << ',' << cell.target << ','
          << policy_name(cell.policies[j]) << ',' << format_double(cell.mean[j]) << ','
          << format_double(cell.std_err[j]) << ','
          << format_double(safe_db(cell.mean[j], cell.reference)) << ','
          << (cell.valid ? cell.trials_used : 0) << '\n';
    }
  }
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  out << "dB values are 10*log10(mse / E[(d*)^2]); gaps are reference-free.\n";
  for (const CellResult& cell : result.cells) {
    out << '\n' << axis_name(result.axis) << " = " << static_cast<std::size_t>(cell.axis_value)
        << ", target " << cell.target;
    if (!cell.valid) {
      out << ": invalid (" << cell.error << ")\n";
      continue;
    }
    out << ": " << cell.trials_used << " trials used, " << cell.rejected << " rejected\n";
    for (std::size_t j = 0; j < cell.policies.size(); ++j) {
      out << "  " << policy_name(cell.policies[j]) << ": "
          << fixed(safe_db(cell.mean[j], cell.reference), 3) << " dB (mse "
          << format_double(cell.mean[j]) << " +/- " << format_double(cell.std_err[j]) << ")\n";
    }
    for (std::size_t a = 0; a < cell.policies.size(); ++a) {
      for (std::size_t b = a + 1; b < cell.policies.size(); ++b) {
        if (!(cell.mean[a] > 0.0) || !(cell.mean[b] > 0.0)) continue;
        const GapEstimate gap = cell.db_gap(cell.policies[a], cell.policies[b]);
        out << "  gap " << policy_name(cell.policies[a]) << " - "
            << policy_name(cell.policies[b]) << ": " << fixed(gap.db, 3) << " dB (+/- "
            << fixed(gap.std_err, 3) << ")\n";
      }
    }
  }
}

}  // namespace aircomp
