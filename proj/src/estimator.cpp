#include "aircomp/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aircomp/error.hpp"

namespace aircomp {

namespace {

void check_sizes(const TargetSpec& spec, const SourceMoments& moments, std::size_t stops,
                 std::span<const double> noise_vars) {
  if (moments.size() != spec.size()) {
    throw std::invalid_argument("source moments do not match target size");
  }
  if (noise_vars.size() != stops) {
    throw std::invalid_argument("noise variance count does not match stop count");
  }
  for (double v : noise_vars) {
    if (!(v >= 0.0)) throw std::invalid_argument("noise variances must be >= 0");
  }
}

double weighted_target_mean(const TargetSpec& spec, const SourceMoments& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) t += spec.weights[i] * m.target[i];
  return t;
}

// Exact form shared by the conditional and marginal cases. `mean_of(i)` and
// `second_of(i)` give E[g_i] (K) and E[g_i g_i'] (K x K) for sensor i.
template <typename MeanOf, typename SecondOf>
QuadraticForm exact_form(std::size_t stops, const TargetSpec& spec, const SourceMoments& m,
                         std::span<const double> noise_vars, MeanOf mean_of,
                         SecondOf second_of) {
  const std::size_t k = stops;
  const double t = weighted_target_mean(spec, m);
  QuadraticForm form;
  form.stops = k;
  form.q.assign(k * k, 0.0);
  form.b.assign(k, 0.0);

  std::vector<double> a(k, 0.0);  // sum_i mu_i E[g_i]
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const std::span<const double> gm = mean_of(i);
    const std::span<const double> gs = second_of(i);
    const double mu = m.mean[i];
    const double w = spec.weights[i];
    for (std::size_t r = 0; r < k; ++r) {
      a[r] += mu * gm[r];
      form.b[r] += (w * m.target_up[i] - mu * w * m.target[i]) * gm[r];
      for (std::size_t s = 0; s < k; ++s) {
        form.q[r * k + s] += m.second[i] * gs[r * k + s] - mu * mu * gm[r] * gm[s];
      }
    }
    form.c += w * w * std::max(0.0, m.target_sq[i] - m.target[i] * m.target[i]);
  }
  for (std::size_t r = 0; r < k; ++r) {
    form.b[r] += t * a[r];
    for (std::size_t s = 0; s < k; ++s) form.q[r * k + s] += a[r] * a[s];
    form.q[r * k + r] += noise_vars[r];
  }
  form.c += t * t;
  return form;
}

}  // namespace

// ---------------------------------------------------------------------------

double QuadraticForm::evaluate(std::span<const double> beta) const {
  if (beta.size() != stops) throw std::invalid_argument("QuadraticForm: beta length");
  double quad = 0.0;
  double lin = 0.0;
  for (std::size_t r = 0; r < stops; ++r) {
    double row = 0.0;
    for (std::size_t s = 0; s < stops; ++s) row += q[r * stops + s] * beta[s];
    quad += beta[r] * row;
    lin += b[r] * beta[r];
  }
  return quad - 2.0 * lin + c;
}

std::vector<double> QuadraticForm::gradient(std::span<const double> beta) const {
  if (beta.size() != stops) throw std::invalid_argument("QuadraticForm: beta length");
  std::vector<double> grad(stops);
  for (std::size_t r = 0; r < stops; ++r) {
    double row = 0.0;
    for (std::size_t s = 0; s < stops; ++s) row += q[r * stops + s] * beta[s];
    grad[r] = 2.0 * row - 2.0 * b[r];
  }
  return grad;
}

double QuadraticForm::equal_a() const {
  double sum = 0.0;
  for (double v : q) sum += v;
  return sum;
}

double QuadraticForm::equal_b() const {
  double sum = 0.0;
  for (double v : b) sum += v;
  return sum;
}

// ---------------------------------------------------------------------------

MseBreakdown mse_model(const TargetSpec& spec, const GainStatistics& stats,
                       const SourceMoments& moments, std::span<const double> noise_vars,
                       const BetaVector& beta) {
  const std::size_t k = stats.size();
  check_sizes(spec, moments, k, noise_vars);
  if (beta.size() != k) throw std::invalid_argument("mse_model: beta length");

  const double t = weighted_target_mean(spec, moments);

  double s1 = 0.0;        // sum_k beta_k E[g(k)]
  double s_var = 0.0;     // sum_k beta_k^2 Var(g(k))
  double s_noise = 0.0;   // sum_k beta_k^2 sigma_{n_k}^2
  double sum_mean = 0.0;  // sum_k E[g(k)]
  double sum_var = 0.0;   // sum_k Var(g(k))
  for (std::size_t j = 0; j < k; ++j) {
    s1 += beta[j] * stats.mean_g[j];
    s_var += beta[j] * beta[j] * stats.var_g[j];
    s_noise += beta[j] * beta[j] * noise_vars[j];
    sum_mean += stats.mean_g[j];
    sum_var += stats.var_g[j];
  }
  double sum_noise = 0.0;
  for (double v : noise_vars) sum_noise += v;

  MseBreakdown out;
  double mse = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double mu = moments.mean[i];
    const double var = moments.var[i];
    const double w = spec.weights[i];
    const double others = t - w * moments.target[i];  // sum_{j != i} w_j E[d_j^{v_j}]
    const double var_power = std::max(0.0, moments.target_sq[i] -
                                               moments.target[i] * moments.target[i]);
    const double cross = w * moments.target_up[i] + mu * others;

    mse += var * s1 * s1 + var * s_var + mu * mu * s_var -
           2.0 * (w * moments.target_up[i] * s1 + mu * s1 * others) + w * var_power;

    out.quadratic_A += var * sum_mean * sum_mean + (var + mu * mu) * sum_var;
    out.linear_B += sum_mean * cross;
    out.constant_C += w * var_power;
  }
  mse += t * t + s_noise;
  out.quadratic_A += sum_noise;
  out.constant_C += t * t;
  out.mse = mse;
  return out;
}

QuadraticForm model_quadratic_form(const TargetSpec& spec, const GainStatistics& stats,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars) {
  const std::size_t k = stats.size();
  check_sizes(spec, moments, k, noise_vars);
  const double t = weighted_target_mean(spec, moments);
  double sum_var = 0.0;
  double sum_second = 0.0;
  double sum_cross = 0.0;
  double constant = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = spec.weights[i];
    sum_var += moments.var[i];
    sum_second += moments.var[i] + moments.mean[i] * moments.mean[i];
    sum_cross += w * moments.target_up[i] + moments.mean[i] * (t - w * moments.target[i]);
    constant += w * std::max(0.0, moments.target_sq[i] - moments.target[i] * moments.target[i]);
  }
  QuadraticForm form;
  form.stops = k;
  form.q.assign(k * k, 0.0);
  form.b.assign(k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t s = 0; s < k; ++s) {
      form.q[r * k + s] = sum_var * stats.mean_g[r] * stats.mean_g[s];
    }
    form.q[r * k + r] += sum_second * stats.var_g[r] + noise_vars[r];
    form.b[r] = stats.mean_g[r] * sum_cross;
  }
  form.c = constant + t * t;
  return form;
}

QuadraticForm exact_quadratic_form(const GainMatrix& gains, const TargetSpec& spec,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars) {
  const std::size_t k = gains.stops();
  check_sizes(spec, moments, k, noise_vars);
  if (gains.sensors() != spec.size()) {
    throw std::invalid_argument("exact_quadratic_form: gain rows do not match target");
  }
  std::vector<double> row(k);
  std::vector<double> outer(k * k);
  auto mean_of = [&](std::size_t i) {
    for (std::size_t j = 0; j < k; ++j) row[j] = gains.g(i, j);
    return std::span<const double>(row);
  };
  auto second_of = [&](std::size_t) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t s = 0; s < k; ++s) outer[r * k + s] = row[r] * row[s];
    }
    return std::span<const double>(outer);
  };
  return exact_form(k, spec, moments, noise_vars, mean_of, second_of);
}

QuadraticForm exact_quadratic_form(const GainStatistics& stats, const TargetSpec& spec,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars) {
  const std::size_t k = stats.size();
  check_sizes(spec, moments, k, noise_vars);
  auto mean_of = [&](std::size_t) { return std::span<const double>(stats.mean_g); };
  auto second_of = [&](std::size_t) { return std::span<const double>(stats.second); };
  return exact_form(k, spec, moments, noise_vars, mean_of, second_of);
}

double mse_exact(const GainMatrix& gains, const TargetSpec& spec, const SourceMoments& moments,
                 std::span<const double> noise_vars, const BetaVector& beta) {
  return exact_quadratic_form(gains, spec, moments, noise_vars).evaluate(beta.values());
}

double mse_exact(const GainStatistics& stats, const TargetSpec& spec,
                 const SourceMoments& moments, std::span<const double> noise_vars,
                 const BetaVector& beta) {
  return exact_quadratic_form(stats, spec, moments, noise_vars).evaluate(beta.values());
}

// ---------------------------------------------------------------------------

double beta_equal_optimal(const TargetSpec& spec, const GainStatistics& stats,
                          const SourceMoments& moments, std::span<const double> noise_vars) {
  const MseBreakdown d =
      mse_model(spec, stats, moments, noise_vars, BetaVector::uniform(stats.size(), 0.0));
  if (!(d.quadratic_A > 0.0)) {
    throw NumericError("beta_equal_optimal: degenerate problem (zero data variance and noise)");
  }
  return d.linear_B / d.quadratic_A;
}

double beta_equal_exact(const QuadraticForm& exact) {
  const double a = exact.equal_a();
  if (!(a > 0.0)) throw NumericError("beta_equal_exact: degenerate problem");
  return exact.equal_b() / a;
}

double heuristic_numerator(const TargetSpec& spec, const SourceMoments& moments) {
  if (moments.size() != spec.size()) {
    throw std::invalid_argument("heuristic_numerator: moments do not match target");
  }
  const double t = weighted_target_mean(spec, moments);
  double num = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = spec.weights[i];
    num += w * moments.target_up[i] + moments.mean[i] * (t - w * moments.target[i]);
  }
  return num;
}

namespace {

double total_variance(const SourceMoments& moments) {
  double s = 0.0;
  for (double v : moments.var) s += v;
  return s;
}

void require_positive_samples(const SumGainSamples& alphas) {
  if (alphas.size() == 0) throw std::invalid_argument("no sum-gain samples");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas.alpha[k] > 0.0)) {
      throw RejectedSample("sum-gain sample " + std::to_string(k) + " is not positive");
    }
  }
}

}  // namespace

BetaVector beta_heuristic(const SumGainSamples& alphas, const TargetSpec& spec,
                          const SourceMoments& moments, std::span<const double> noise_vars,
                          std::optional<double> budget) {
  require_positive_samples(alphas);
  check_sizes(spec, moments, alphas.size(), noise_vars);
  const double n = static_cast<double>(spec.size());
  const double k = static_cast<double>(alphas.size());
  const double num = heuristic_numerator(spec, moments);
  const double var_total = total_variance(moments);

  std::vector<double> beta(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const double a = alphas.alpha[j];
    const double den = (a / n) * var_total + n * noise_vars[j] / a + (k - 1.0) * (a / n) * var_total;
    if (!(den > 0.0)) throw NumericError("beta_heuristic: zero denominator");
    // Coefficients are non-negative; a negative numerator projects to zero.
    beta[j] = std::max(0.0, num / den);
  }
  return BetaVector(std::move(beta), budget);
}

double beta_heuristic_equal(const SumGainSamples& alphas, const TargetSpec& spec,
                            const SourceMoments& moments,
                            std::span<const double> noise_vars) {
  require_positive_samples(alphas);
  check_sizes(spec, moments, alphas.size(), noise_vars);
  const double n = static_cast<double>(spec.size());
  double alpha_sum = 0.0;
  for (double a : alphas.alpha) alpha_sum += a;
  double noise_sum = 0.0;
  for (double v : noise_vars) noise_sum += v;
  const double den = (1.0 / n) * alpha_sum * total_variance(moments) + n * noise_sum / alpha_sum;
  if (!(den > 0.0)) throw NumericError("beta_heuristic_equal: zero denominator");
  return std::max(0.0, heuristic_numerator(spec, moments) / den);
}

BetaVector beta_benchmark(const Trajectory& traj, const ChannelParams& params, double zeta,
                          std::size_t n, std::optional<double> budget) {
  traj.validate();
  params.validate();
  if (n == 0) throw std::invalid_argument("beta_benchmark: n must be >= 1");
  const double nominal =
      std::sqrt(zeta * params.tx_power_w) * channel_power_gain(params, traj.altitude);
  const double value =
      1.0 / (static_cast<double>(traj.size()) * static_cast<double>(n) * nominal);
  return BetaVector::uniform(traj.size(), value, budget);
}

// ---------------------------------------------------------------------------

namespace {
constexpr std::array<std::pair<Policy, std::string_view>, 5> kPolicyNames{{
    {Policy::kClosedFormEqual, "closed-form-equal"},
    {Policy::kHeuristic, "heuristic"},
    {Policy::kHeuristicEqual, "heuristic-equal"},
    {Policy::kBenchmark, "benchmark"},
    {Policy::kGridOracle, "grid-oracle"},
}};
}  // namespace

std::string_view policy_name(Policy policy) {
  for (const auto& [p, name] : kPolicyNames) {
    if (p == policy) return name;
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  for (const auto& [p, n] : kPolicyNames) {
    if (n == name) return p;
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

bool policy_uses_samples(Policy policy) {
  return policy == Policy::kHeuristic || policy == Policy::kHeuristicEqual;
}

}  // namespace aircomp
