#pragma once

#include <span>
#include <vector>

#include "selfnorm/process.hpp"

namespace selfnorm {

// Values are computed in log space; `overflow` is set (never silently
// clamped) when the log exceeds the cap, in which case `value` is +inf.
struct SupermartingaleValue {
  double log_value = 0.0;
  double value = 1.0;
  bool overflow = false;
};

inline constexpr double kDefaultLogCap = 700.0;

// exp(lambda A_n - lambda^2 B_n^2 / 2) for the path's canonical pairing.
// Errors if lambda is outside the path's regime or n exceeds the horizon.
SupermartingaleValue exp_supermartingale_value(const ProcessPath& path,
                                               double lambda, std::size_t n,
                                               double log_cap = kDefaultLogCap);

// Stout normalizer sequence B_n^2 = (1 + lambda0 m_bound / 2) sum sigma_i^2
// for paths with increments bounded above by m_bound and conditional mean <= 0.
// Requires 0 < lambda0 <= 1/m_bound.
std::vector<double> stout_b_squared(const ProcessPath& path, double lambda0,
                                    double m_bound);

// exp(lambda A_n - lambda^2 V_n^2 / (2 (1 - m_bound lambda))) with V_n^2 the
// conditional-variance prefix. Requires 0 <= lambda < 1/m_bound.
SupermartingaleValue bernstein_supermartingale_value(
    const ProcessPath& path, double lambda, double m_bound, std::size_t n,
    double log_cap = kDefaultLogCap);

// B_n^2 = 2 C_gamma sum d_i^2 for paths with increments bounded below by
// -m_bound and conditional mean <= 0; gamma in [0,1), C_0 = 1/2 by limit.
std::vector<double> lemma_a7_b_squared(const ProcessPath& path, double gamma,
                                       double m_bound);

// exp{sum_i (y_i - mu_i - y_i^2 / lambda_i)} with mu_i supplied by the caller
// from the exact conditional law. Requires 0 <= gamma_i < 1 and
// 0 < lambda_i <= 1/C_{gamma_i}.
SupermartingaleValue lemma_a8_value(std::span<const double> y,
                                    std::span<const double> gamma_seq,
                                    std::span<const double> lambda_seq,
                                    std::span<const double> mu_seq,
                                    double log_cap = kDefaultLogCap);

// Same, with mu_i computed for conditionally-normal y_i ~ N(0, scale^2).
SupermartingaleValue lemma_a8_value_normal(std::span<const double> y,
                                           double gamma, double lambda,
                                           double scale,
                                           double log_cap = kDefaultLogCap);

}  // namespace selfnorm
