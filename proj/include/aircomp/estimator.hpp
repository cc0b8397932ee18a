#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/geometry.hpp"
#include "aircomp/nomographic.hpp"
#include "aircomp/protocol.hpp"

namespace aircomp {

// ---------------------------------------------------------------------------
// Gain statistics over a uniformly placed sensor
// ---------------------------------------------------------------------------

// Moments of g(k) = sqrt(zeta P) g0^2 / D(k)^2 for one sensor uniform on the
// coverage disk. Every sensor shares these, so they are per-stop only.
struct GainStatistics {
  std::vector<double> mean_g;  // E[g(k)]
  std::vector<double> var_g;   // Var(g(k))
  std::vector<double> second;  // K x K row-major E[g(k) g(k')]

  std::size_t size() const { return mean_g.size(); }
  double covariance(std::size_t k, std::size_t kp) const {
    return second[k * size() + kp] - mean_g[k] * mean_g[kp];
  }
};

struct QuadratureOptions {
  std::size_t radial_nodes = 256;   // Gauss-Legendre in r^2
  std::size_t angular_nodes = 256;  // trapezoid in angle
  double tolerance = 1e-6;          // relative change allowed on refinement
};

// Product quadrature over the disk, repeated at twice the node count; throws
// NumericError when the two disagree by more than the tolerance.
GainStatistics gain_statistics(const Trajectory& traj, double r_cov,
                               const ChannelParams& params, double zeta,
                               const QuadratureOptions& options = {});

// ---------------------------------------------------------------------------
// MSE as a quadratic form in beta
// ---------------------------------------------------------------------------

// mse(beta) = beta' Q beta - 2 b' beta + c
struct QuadraticForm {
  std::size_t stops = 0;
  std::vector<double> q;  // K x K row-major
  std::vector<double> b;
  double c = 0.0;

  double evaluate(std::span<const double> beta) const;
  // Gradient 2 Q beta - 2 b.
  std::vector<double> gradient(std::span<const double> beta) const;
  // Restriction to beta_1 = ... = beta_K = beta: A beta^2 - 2 B beta + c.
  double equal_a() const;
  double equal_b() const;
};

struct MseBreakdown {
  double quadratic_A = 0.0;
  double linear_B = 0.0;
  double constant_C = 0.0;
  double mse = 0.0;
};

// Reduced analytic MSE model: only sigma_i^2 enters
// the squared-mean term, stops are treated as independent in the variance
// term, the data-variance constant carries w_i (not w_i^2), and the noise
// term is sum_k beta_k^2 sigma_{n_k}^2. `mse` is evaluated term by term for
// the given beta; A, B, C are the equal-beta coefficients.
MseBreakdown mse_model(const TargetSpec& spec, const GainStatistics& stats,
                       const SourceMoments& moments, std::span<const double> noise_vars,
                       const BetaVector& beta);

// The same model written as a quadratic form in beta.
QuadraticForm model_quadratic_form(const TargetSpec& spec, const GainStatistics& stats,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars);

// Exact E[(sum_k beta_k (sum_i g_i(k) d_i + n_k) - sum_i w_i d_i^{v_i})^2].
//
// Conditional: gains are fixed, the expectation runs over data and noise.
// Marginal: gains are additionally averaged over independent uniform sensor
// positions, including the correlation between stops that a shared position
// induces.
QuadraticForm exact_quadratic_form(const GainMatrix& gains, const TargetSpec& spec,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars);
QuadraticForm exact_quadratic_form(const GainStatistics& stats, const TargetSpec& spec,
                                   const SourceMoments& moments,
                                   std::span<const double> noise_vars);

double mse_exact(const GainMatrix& gains, const TargetSpec& spec, const SourceMoments& moments,
                 std::span<const double> noise_vars, const BetaVector& beta);
double mse_exact(const GainStatistics& stats, const TargetSpec& spec,
                 const SourceMoments& moments, std::span<const double> noise_vars,
                 const BetaVector& beta);

// ---------------------------------------------------------------------------
// Coefficient policies
// ---------------------------------------------------------------------------

// Stationary point B / A of mse_model under equal coefficients. Includes
// sum_k sigma_{n_k}^2 in A; with zero noise it reduces to the noise-free closed form.
// Throws NumericError when A <= 0.
double beta_equal_optimal(const TargetSpec& spec, const GainStatistics& stats,
                          const SourceMoments& moments, std::span<const double> noise_vars);

// Exact-MSE stationary point under equal coefficients.
double beta_equal_exact(const QuadraticForm& exact);

// Shared numerator of the heuristic rules:
// sum_i (w_i E[d_i^{v_i+1}] + mu_i sum_{j != i} w_j E[d_j^{v_j}]).
double heuristic_numerator(const TargetSpec& spec, const SourceMoments& moments);

// Per-round rule built on g_i(k) ~ alpha_k / N with equal per-round
// contributions. Throws RejectedSample when any alpha_k <= 0.
BetaVector beta_heuristic(const SumGainSamples& alphas, const TargetSpec& spec,
                          const SourceMoments& moments, std::span<const double> noise_vars,
                          std::optional<double> budget = std::nullopt);

// Equal-coefficient variant of the heuristic rule.
double beta_heuristic_equal(const SumGainSamples& alphas, const TargetSpec& spec,
                            const SourceMoments& moments,
                            std::span<const double> noise_vars);

// Incognizant baseline: beta_k = 1 / (K N g_nom), g_nom the directly-overhead
// effective gain. Never looks at alpha.
BetaVector beta_benchmark(const Trajectory& traj, const ChannelParams& params, double zeta,
                          std::size_t n, std::optional<double> budget = std::nullopt);

enum class Policy {
  kClosedFormEqual,
  kHeuristic,
  kHeuristicEqual,
  kBenchmark,
  kGridOracle,
};

std::string_view policy_name(Policy policy);
// Throws ConfigError for unknown names.
Policy parse_policy(std::string_view name);
bool policy_uses_samples(Policy policy);

}  // namespace aircomp
