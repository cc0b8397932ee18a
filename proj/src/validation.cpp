#include "aircomp/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "aircomp/estimator.hpp"
#include "aircomp/evaluation.hpp"
#include "aircomp/random.hpp"

namespace aircomp {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

CheckResult check(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_quick_validation(std::uint64_t seed) {
  std::vector<CheckResult> results;
  const ChannelParams params;

  results.push_back(check("pilot equals unit-data flyover without noise", [&] {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto field = deploy_sensors(20, 10.0, 0.99, 1.0, 1.0, mix_seed(seed, s));
      const auto traj = plan_diameter_trajectory(5, 10.0, 50.0);
      const auto gains = effective_gain_matrix(field, traj, params);
      const auto pilot = sampling_phase(gains, 0.0, s);
      const std::vector<double> ones(field.size(), 1.0);
      const auto data = computation_phase(gains, ones, 0.0, s + 1);
      for (std::size_t k = 0; k < traj.size(); ++k) {
        worst = std::max(worst, std::abs(pilot.alpha[k] - data.dbar[k]));
      }
    }
    return CheckResult{{}, worst == 0.0, fmt("max difference %.3g", worst)};
  }));

  results.push_back(check("distance stays within [H, H sqrt(1 + (2R/H)^2)]", [&] {
    Rng rng(seed);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const double r_cov = 1.0 + 49.0 * rng.uniform();
      const double h = 1.0 + 199.0 * rng.uniform();
      const auto field = deploy_sensors(10, r_cov, 1.0, 0.0, 1.0, rng.uniform() * 1e9);
      const auto traj = plan_diameter_trajectory(1 + trial % 10, r_cov, h);
      const double upper = max_distance_bound(r_cov, h);
      for (std::size_t i = 0; i < field.size(); ++i) {
        for (std::size_t k = 0; k < traj.size(); ++k) {
          const double d = distance(field, i, traj, k);
          if (d < h || d > upper * (1.0 + 1e-12)) ++violations;
        }
      }
    }
    return CheckResult{{}, violations == 0, fmt("%.0f violations", double(violations))};
  }));

  results.push_back(check("Gaussian identities for E[d^2] and E[d^3]", [&] {
    double worst = 0.0;
    for (double mu : {-2.0, 0.0, 1.0, 3.0}) {
      for (double var : {0.25, 1.0, 4.0}) {
        worst = std::max(worst, std::abs(gaussian_raw_moment(mu, var, 2) - (mu * mu + var)));
        worst = std::max(worst, std::abs(gaussian_raw_moment(mu, var, 3) -
                                         (mu * mu * mu + 3.0 * mu * var)));
      }
    }
    return CheckResult{{}, worst == 0.0, fmt("max difference %.3g", worst)};
  }));

  results.push_back(check("closed-form equal beta is stationary", [&] {
    Rng rng(seed + 7);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + trial % 7;
      const std::size_t k = 1 + trial % 4;
      const auto spec = preset_target(1 + trial % 3, n);
      GainStatistics stats;
      for (std::size_t j = 0; j < k; ++j) {
        stats.mean_g.push_back(0.5 + rng.uniform());
        stats.var_g.push_back(0.1 * rng.uniform());
      }
      std::vector<double> mean(n);
      std::vector<double> var(n);
      for (std::size_t i = 0; i < n; ++i) {
        mean[i] = 2.0 * rng.uniform() - 0.5;
        var[i] = 0.1 + rng.uniform();
      }
      const auto m = source_moments(spec, mean, var);
      const std::vector<double> noise(k, 0.01 * rng.uniform());
      const double beta = beta_equal_optimal(spec, stats, m, noise);
      const auto d = mse_model(spec, stats, m, noise, BetaVector::uniform(k, 0.0));
      const double deriv = 2.0 * d.quadratic_A * beta - 2.0 * d.linear_B;
      worst = std::max(worst, std::abs(deriv) / (2.0 * std::abs(d.linear_B)));
    }
    return CheckResult{{}, worst <= 1e-10, fmt("max relative derivative %.3g", worst)};
  }));

  results.push_back(check("equal-sample heuristic matches its equal-beta form", [&] {
    const auto spec = preset_target(2, 20);
    const std::vector<double> mean(20, 1.0);
    const std::vector<double> var(20, 1.0);
    const auto m = source_moments(spec, mean, var);
    const std::vector<double> noise(5, 1e-10);
    SumGainSamples alphas{std::vector<double>(5, 6e-6), noise};
    const auto per_round = beta_heuristic(alphas, spec, m, noise);
    const double equal = beta_heuristic_equal(alphas, spec, m, noise);
    double worst = 0.0;
    for (double b : per_round.values()) worst = std::max(worst, std::abs(b - equal) / equal);
    return CheckResult{{}, worst <= 1e-14, fmt("max relative difference %.3g", worst)};
  }));

  results.push_back(check("budget clamp holds for every policy", [&] {
    ExperimentConfig c;
    c.trials = 200;
    c.beta_budget = 1e3;
    c.pilot_noise_var = 1e-14;
    c.policies = {Policy::kClosedFormEqual, Policy::kHeuristic, Policy::kHeuristicEqual,
                  Policy::kBenchmark};
    const Scenario scenario(c, preset_target(1, c.n));
    double worst = 0.0;
    for (std::size_t t = 0; t < 20; ++t) {
      const auto r = scenario.realize(trial_seed(seed, t));
      for (Policy p : c.policies) worst = std::max(worst, scenario.beta_for(p, r).sum());
    }
    return CheckResult{{}, worst <= *c.beta_budget, fmt("largest sum %.17g", worst)};
  }));

  results.push_back(check("quadrature matches the closed-form mean gain at the center", [&] {
    const Trajectory traj{50.0, {{0.0, 0.0}}};
    const ChannelParams unit{0.0275, 1.0};
    const auto stats = gain_statistics(traj, 10.0, unit, 1.0);
    const double exact = 0.0275 * 0.0275 * std::log1p(100.0 / 2500.0) / 100.0;
    const double rel = std::abs(stats.mean_g[0] - exact) / exact;
    return CheckResult{{}, rel <= 1e-10, fmt("relative error %.3g", rel)};
  }));

  results.push_back(check("conditional exact MSE agrees with Monte Carlo", [&] {
    ExperimentConfig c;
    c.redeploy_per_trial = false;
    c.trials = 20000;
    c.seed = seed;
    c.policies = {Policy::kBenchmark};
    const auto mc = estimate_mse(c, Policy::kBenchmark);
    const Scenario scenario(c, preset_target(1, c.n));
    const auto gains = effective_gain_matrix(*scenario.fixed_field(), scenario.trajectory(),
                                             c.channel());
    const double exact = mse_exact(gains, scenario.target(), scenario.moments(),
                                   scenario.noise_vars(), scenario.beta_for(Policy::kBenchmark, {}));
    const double z = std::abs(mc.mean - exact) / mc.std_err;
    return CheckResult{{}, z <= 4.0, fmt("|z| = %.2f (exact %.6g)", z, exact)};
  }));

  return results;
}

}  // namespace aircomp
