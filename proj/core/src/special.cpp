#include "selfnorm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace selfnorm {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kSqrt2 = 1.4142135623730950488016887;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_log_cdf(double x) {
  if (x > -30.0) {
    const double c = normal_cdf(x);
    if (c > 0.0) return std::log(c);
  }
  // Asymptotic lower tail: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + 3/x^4 - ...)
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2);
  return -0.5 * x2 - 0.5 * std::log(2.0 * M_PI) - std::log(-x) +
         std::log(series);
}

// Acklam's rational approximation refined by one Halley step.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double normal_windowed_mean(double scale, double c, double d) {
  if (!(scale > 0.0))
    throw std::invalid_argument("normal_windowed_mean: scale must be > 0");
  if (!(c < d)) throw std::invalid_argument("normal_windowed_mean: c < d required");
  return scale * (normal_pdf(c / scale) - normal_pdf(d / scale));
}

double c_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("c_gamma: gamma must lie in [0,1)");
  if (gamma < 0.1) {
    // C_gamma = sum_{k>=2} gamma^{k-2}/k; direct formula cancels badly here.
    double term = 1.0;
    double sum = 0.0;
    for (int k = 2; k <= 16; ++k) {
      sum += term / static_cast<double>(k);
      term *= gamma;
    }
    return sum;
  }
  return -(gamma + std::log1p(-gamma)) / (gamma * gamma);
}

}  // namespace selfnorm
