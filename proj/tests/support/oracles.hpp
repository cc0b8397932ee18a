#pragma once

// Reference implementations for the tests; none of these call the library.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

// E[d^v], d ~ N(mu, var), by adaptive Gauss-Kronrod on the density after the
// substitution d = mu + sigma z, split at z = 0.
inline double gaussian_moment_quadrature(double mu, double var, int v) {
  if (var == 0.0) return std::pow(mu, v);
  const double sigma = std::sqrt(var);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * boost::math::constants::pi<double>());
  auto f = [&](double z) {
    return std::pow(mu + sigma * z, v) * std::exp(-0.5 * z * z) * inv_sqrt_2pi;
  };
  double err = 0.0;
  double total = 0.0;
  total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, -std::numeric_limits<double>::infinity(), 0.0, 15, 1e-14, &err);
  total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14, &err);
  return total;
}

// Closed-form E[d^v] from the binomial expansion over central moments
// E[z^{2j}] = (2j-1)!!, in 50-digit arithmetic.
inline Real gaussian_moment_binomial(Real mu, Real var, int v) {
  Real total = 0;
  Real binom = 1;
  for (int j = 0; j <= v; ++j) {
    if (j > 0) binom = binom * (v - j + 1) / j;
    if (j % 2 == 1) continue;
    Real dfact = 1;
    for (int q = j - 1; q > 1; q -= 2) dfact *= q;
    total += binom * boost::multiprecision::pow(mu, v - j) *
             boost::multiprecision::pow(var, j / 2) * dfact;
  }
  return total;
}

struct Source {
  std::vector<double> w;
  std::vector<int> v;
  std::vector<double> mu;
  std::vector<double> var;
};

// Literal transcription of the per-round heuristic rule in 50-digit
// arithmetic:
//   beta_k = num / [(a_k/N) S + N s_k / a_k + (K-1)(a_k/N) S],
//   num = sum_i (w_i E[d_i^{v_i+1}] + mu_i sum_{j != i} w_j E[d_j^{v_j}]),
//   S = sum_i sigma_i^2.
inline std::vector<double> heuristic_transcription(const Source& s,
                                                   const std::vector<double>& alpha,
                                                   const std::vector<double>& noise) {
  const std::size_t n = s.w.size();
  const std::size_t k = alpha.size();
  Real num = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real others = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others += Real(s.w[j]) * gaussian_moment_binomial(s.mu[j], s.var[j], s.v[j]);
    }
    num += Real(s.w[i]) * gaussian_moment_binomial(s.mu[i], s.var[i], s.v[i] + 1) +
           Real(s.mu[i]) * others;
  }
  Real var_sum = 0;
  for (double x : s.var) var_sum += x;
  std::vector<double> out(k);
  const Real nn = static_cast<double>(n);
  const Real kk = static_cast<double>(k);
  for (std::size_t q = 0; q < k; ++q) {
    const Real a = alpha[q];
    const Real den = (a / nn) * var_sum + nn * Real(noise[q]) / a + (kk - 1) * (a / nn) * var_sum;
    out[q] = static_cast<double>(num / den);
  }
  return out;
}

// Equal-coefficient form: num / [(1/N) sum_k a_k S + N sum_k s_k / sum_k a_k].
inline double heuristic_equal_transcription(const Source& s, const std::vector<double>& alpha,
                                            const std::vector<double>& noise) {
  const std::size_t n = s.w.size();
  Real num = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real others = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others += Real(s.w[j]) * gaussian_moment_binomial(s.mu[j], s.var[j], s.v[j]);
    }
    num += Real(s.w[i]) * gaussian_moment_binomial(s.mu[i], s.var[i], s.v[i] + 1) +
           Real(s.mu[i]) * others;
  }
  Real var_sum = 0;
  for (double x : s.var) var_sum += x;
  Real alpha_sum = 0;
  Real noise_sum = 0;
  for (double a : alpha) alpha_sum += a;
  for (double x : noise) noise_sum += x;
  const Real nn = static_cast<double>(n);
  return static_cast<double>(num / (alpha_sum / nn * var_sum + nn * noise_sum / alpha_sum));
}

// Conditional MSE by brute expansion: with gains fixed, the estimate error is
// e = sum_i (c_i d_i - w_i d_i^{v_i}) + sum_k beta_k n_k, c_i = sum_k beta_k g_ik.
// Sensors are independent, so E[e^2] = Var + mean^2 with per-sensor terms
// built from raw moments.
inline double conditional_mse(const Source& s, const std::vector<std::vector<double>>& g,
                              const std::vector<double>& beta,
                              const std::vector<double>& noise) {
  Real mean = 0;
  Real var = 0;
  for (std::size_t i = 0; i < s.w.size(); ++i) {
    Real c = 0;
    for (std::size_t k = 0; k < beta.size(); ++k) c += Real(beta[k]) * g[i][k];
    const int v = s.v[i];
    const Real m1 = gaussian_moment_binomial(s.mu[i], s.var[i], 1);
    const Real m2 = gaussian_moment_binomial(s.mu[i], s.var[i], 2);
    const Real mv = gaussian_moment_binomial(s.mu[i], s.var[i], v);
    const Real mv1 = gaussian_moment_binomial(s.mu[i], s.var[i], v + 1);
    const Real m2v = gaussian_moment_binomial(s.mu[i], s.var[i], 2 * v);
    const Real w = s.w[i];
    const Real e1 = c * m1 - w * mv;
    const Real e2 = c * c * m2 - 2 * c * w * mv1 + w * w * m2v;
    mean += e1;
    var += e2 - e1 * e1;
  }
  for (std::size_t k = 0; k < beta.size(); ++k) var += Real(beta[k]) * beta[k] * noise[k];
  return static_cast<double>(var + mean * mean);
}

}  // namespace oracle
