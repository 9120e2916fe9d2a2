#include "selfnorm/supermartingale.hpp"

#include <cmath>
#include <stdexcept>

#include "selfnorm/special.hpp"

namespace selfnorm {

namespace {

SupermartingaleValue from_log(double log_value, double log_cap) {
  SupermartingaleValue v;
  v.log_value = log_value;
  v.overflow = log_value > log_cap;
  v.value = std::exp(log_value);
  return v;
}

void check_index(const ProcessPath& path, std::size_t n) {
  if (n > path.horizon())
    throw std::invalid_argument("index n exceeds the path horizon");
}

}  // namespace

SupermartingaleValue exp_supermartingale_value(const ProcessPath& path,
                                               double lambda, std::size_t n,
                                               double log_cap) {
  check_index(path, n);
  if (!path.regime.contains(lambda))
    throw std::invalid_argument(
        "lambda outside the canonical regime (" + path.regime.describe() + ")");
  const double b2 = path.b_squared(n);
  return from_log(lambda * path.a_values[n] - 0.5 * lambda * lambda * b2,
                  log_cap);
}

std::vector<double> stout_b_squared(const ProcessPath& path, double lambda0,
                                    double m_bound) {
  if (!(m_bound > 0.0))
    throw std::invalid_argument("stout_b_squared: m_bound must be > 0");
  if (!(lambda0 > 0.0) || lambda0 > 1.0 / m_bound)
    throw std::invalid_argument(
        "stout_b_squared: requires 0 < lambda0 <= 1/m_bound");
  for (double d : path.increments) {
    if (d > m_bound * (1.0 + 1e-12))
      throw std::invalid_argument(
          "stout_b_squared: path has an increment above m_bound");
  }
  const double factor = 1.0 + 0.5 * lambda0 * m_bound;
  std::vector<double> out(path.cond_var.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = factor * path.cond_var[i];
  return out;
}

SupermartingaleValue bernstein_supermartingale_value(const ProcessPath& path,
                                                     double lambda,
                                                     double m_bound,
                                                     std::size_t n,
                                                     double log_cap) {
  check_index(path, n);
  if (!(m_bound > 0.0))
    throw std::invalid_argument("bernstein: m_bound must be > 0");
  if (lambda < 0.0 || lambda >= 1.0 / m_bound)
    throw std::invalid_argument("Bernstein regime violated: requires 0 <= lambda < 1/m_bound");
  const double v2 = path.cond_var[n];
  const double log_value = lambda * path.a_values[n] -
                           0.5 * lambda * lambda * v2 / (1.0 - m_bound * lambda);
  return from_log(log_value, log_cap);
}

std::vector<double> lemma_a7_b_squared(const ProcessPath& path, double gamma,
                                       double m_bound) {
  if (!(m_bound > 0.0))
    throw std::invalid_argument("lemma_a7_b_squared: m_bound must be > 0");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("lemma_a7_b_squared: gamma must lie in [0,1)");
  for (double d : path.increments) {
    if (d < -m_bound * (1.0 + 1e-12))
      throw std::invalid_argument(
          "lemma_a7_b_squared: path has an increment below -m_bound");
  }
  const double factor = 2.0 * c_gamma(gamma);
  std::vector<double> out(path.times.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double d = path.increments[i - 1];
    sum += d * d;
    out[i] = factor * sum;
  }
  return out;
}

SupermartingaleValue lemma_a8_value(std::span<const double> y,
                                    std::span<const double> gamma_seq,
                                    std::span<const double> lambda_seq,
                                    std::span<const double> mu_seq,
                                    double log_cap) {
  const std::size_t n = y.size();
  if (gamma_seq.size() != n || lambda_seq.size() != n || mu_seq.size() != n)
    throw std::invalid_argument("lemma_a8_value: sequence length mismatch");
  double log_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gamma_seq[i];
    const double l = lambda_seq[i];
    if (!(g >= 0.0 && g < 1.0))
      throw std::invalid_argument("lemma_a8_value: gamma_n must lie in [0,1)");
    if (!(l > 0.0) || l > 1.0 / c_gamma(g))
      throw std::invalid_argument(
          "lemma_a8_value: requires 0 < lambda_n <= 1/C_{gamma_n}");
    log_value += y[i] - mu_seq[i] - y[i] * y[i] / l;
  }
  SupermartingaleValue v;
  v.log_value = log_value;
  v.overflow = log_value > log_cap;
  v.value = std::exp(log_value);
  return v;
}

SupermartingaleValue lemma_a8_value_normal(std::span<const double> y,
                                           double gamma, double lambda,
                                           double scale, double log_cap) {
  const double mu = normal_windowed_mean(scale, -gamma, lambda);
  std::vector<double> gs(y.size(), gamma), ls(y.size(), lambda),
      mus(y.size(), mu);
  return lemma_a8_value(y, gs, ls, mus, log_cap);
}

}  // namespace selfnorm
