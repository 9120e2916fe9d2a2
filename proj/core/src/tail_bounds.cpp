#include "selfnorm/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "selfnorm/quadrature.hpp"

namespace selfnorm {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
constexpr double kE = 2.718281828459045235360287;
}  // namespace

BoundValue bound_thm21(double x, double y) {
  require(x > 0.0 && y > 0.0, "bound_thm21: requires x > 0 and y > 0");
  return BoundValue::of(std::exp(-x * x / (2.0 * y)));
}

BoundValue bound_thm21_ar1(double x, double z) {
  require(x > 0.0 && z > 0.0, "bound_thm21_ar1: requires x > 0 and z > 0");
  return BoundValue::of(2.0 * std::exp(-0.5 * x * x * z));
}

BoundValue bound_thm22(double x, double s) {
  require(x >= 1.0, "bound_thm22: requires x >= 1");
  require(s >= 1.0, "bound_thm22: requires s >= 1");
  const double v =
      4.0 * std::sqrt(kE) * x * (1.0 + std::log(s)) * std::exp(-0.5 * x * x);
  return BoundValue::of(v);
}

BoundValue bound_thm23(double alpha, double beta, double lambda) {
  require(alpha > 0.0 && beta > 0.0 && lambda > 0.0,
          "bound_thm23: requires alpha, beta, lambda > 0");
  return BoundValue::of(std::exp(-2.0 * alpha * beta * lambda * lambda));
}

BoundValue bound_thm24_25(double x, double alpha, double beta, double y) {
  require(x >= 0.0 && alpha >= 0.0, "bound_thm24_25: requires x, alpha >= 0");
  require(beta > 0.0 && y > 0.0, "bound_thm24_25: requires beta, y > 0");
  return BoundValue::of(
      std::exp(-x * x * (beta * beta / (2.0 * y) + alpha * beta)));
}

std::pair<BoundValue, BoundValue> bound_thm26(double x, double y, double c) {
  require(x > 0.0 && y > 0.0 && c > 0.0, "bound_thm26: requires x, y, c > 0");
  const double root = std::sqrt(1.0 + 2.0 * c * x);
  const double primary = std::exp(-(x * x / (1.0 + c * x + root)) / y);
  const double simplified = std::exp(-x * x / (2.0 * y * (1.0 + c * x)));
  return {BoundValue::of(primary), BoundValue::of(simplified)};
}

BoundValue bound_thm27(double x) {
  require(x > 0.0, "bound_thm27: requires x > 0");
  return BoundValue::of(std::sqrt(2.0) * std::exp(-0.25 * x * x));
}

double statistic_thm27(double a, double b, double mean_b) {
  require(b >= 0.0, "statistic_thm27: requires B >= 0");
  require(mean_b > 0.0, "statistic_thm27: requires EB > 0");
  return std::abs(a) / std::sqrt(b * b + mean_b * mean_b);
}

Thm28Statistics statistic_thm28(double a, double b) {
  require(b > 0.0, "statistic_thm28: requires B > 0");
  Thm28Statistics s;
  const double a_plus = std::max(a, 0.0);
  s.ratio_29 = a_plus / b;
  const double arg = std::max(b, 1.0 / b);
  const double log_plus_log = std::max(0.0, std::log(std::log(arg)));
  const double factor = std::sqrt(std::max(1.0, log_plus_log));
  s.ratio_210 = a_plus / (b * factor);
  return s;
}

double canonical_l(double x) {
  const double z = std::max(x, 1.0);
  const double inner = std::log(z) + kE;  // log(z e^e)
  const double outer = std::log(inner);
  return 2.0 * inner * outer * outer;
}

double canonical_l_log(double u) {
  const double inner = std::max(u, 0.0) + kE;
  const double outer = std::log(inner);
  return 2.0 * inner * outer * outer;
}

double density_f(double lambda, const LFunction& l) {
  require(lambda > 0.0, "density_f: requires lambda > 0");
  return 1.0 / (lambda * l(std::max(lambda, 1.0 / lambda)));
}

double l_tail_integral_log(const LFunction& log_l, double u_max) {
  QuadOptions opts;
  opts.rel_tol = 1e-12;
  double lo = 0.0;
  double total = 0.0;
  for (double hi = 10.0; lo < u_max; hi *= 10.0) {
    hi = std::min(hi, u_max);
    total += integrate([&](double u) { return 1.0 / log_l(u); }, lo, hi, opts)
                 .value;
    lo = hi;
  }
  // Tail beyond u_max, exact for integrands decaying like
  // 1/(2 (u+e) log^2(u+e)): int_U^inf = (U+e) log(U+e) f(U).
  const double tail = (u_max + kE) * std::log(u_max + kE) / log_l(u_max);
  return total + tail;
}

LConditionReport check_l_conditions(const LFunction& l, const LFunction& log_l,
                                    int grid_points, double integral_tol) {
  LConditionReport rep;
  rep.scaling_worst = 0.0;
  rep.squaring_worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double y = std::pow(10.0, -6.0 + 12.0 * i / (grid_points - 1.0));
    for (int j = 0; j < grid_points; ++j) {
      const double c = std::pow(10.0, 6.0 * j / (grid_points - 1.0));
      const double ratio = l(c * y) / (3.0 * c * l(y));
      rep.scaling_worst = std::max(rep.scaling_worst, ratio);
    }
    if (y >= 1.0) {
      const double ratio = l(y * y) / (3.0 * l(y));
      rep.squaring_worst = std::max(rep.squaring_worst, ratio);
    }
  }
  rep.scaling_ok = rep.scaling_worst <= 1.0 + 1e-12;
  rep.squaring_ok = rep.squaring_worst <= 1.0 + 1e-12;
  rep.integral = l_tail_integral_log(log_l);
  rep.integral_ok = std::abs(rep.integral - 0.5) <= integral_tol;
  return rep;
}

double constant_212_rhs() {
  QuadOptions opts;
  opts.rel_tol = 1e-13;
  const double denom =
      integrate([](double x) { return std::exp(-0.5 * x * x); }, 0.0, 1.0, opts)
          .value;
  return 3.0 / denom;
}

double lhs_212_statistic(double a, double b, const LFunction& l) {
  require(b > 0.0, "lhs_212_statistic: requires B > 0");
  const double ratio = a / b;
  if (ratio < 1.0) return 0.0;
  const double g = std::exp(0.5 * ratio * ratio) / ratio;
  const double denom = std::max(l(ratio), l(std::max(b, 1.0 / b)));
  return g / denom;
}

double graversen_peskir_l(double x) {
  require(x >= 0.0, "graversen_peskir_l: requires x >= 0");
  return std::sqrt(std::log(1.0 + std::log(1.0 + x)));
}

Thm29Statistics statistic_thm29(const ProcessPath& path, std::size_t tau) {
  if (tau > path.horizon())
    throw std::invalid_argument("statistic_thm29: tau exceeds horizon");
  Thm29Statistics out;
  for (std::size_t t = 0; t <= tau; ++t) {
    const double r =
        std::abs(path.a_values[t]) / std::sqrt(1.0 + path.b_squared(t));
    out.sup_ratio = std::max(out.sup_ratio, r);
  }
  out.l_of_qv = graversen_peskir_l(path.b_squared(tau));
  return out;
}

double phi_q(double theta, double q) {
  require(q > 1.0 && q <= 2.0, "phi_q: requires 1 < q <= 2");
  return std::pow(theta, q) / q;
}

double statistic_thm210(const ProcessPath& path, double eta, double q,
                        const LFunction& l) {
  require(eta > 0.0, "statistic_thm210: requires eta > 0");
  require(q > 1.0 && q <= 2.0, "statistic_thm210: requires 1 < q <= 2");
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= path.horizon(); ++t) {
    const double beta = std::max(path.b_values[t], eta);
    const double log_plus_l = std::max(0.0, std::log(l(beta)));
    const double weight =
        std::pow(std::max(1.0, log_plus_l), -(q - 1.0) / q);
    sup = std::max(sup, path.a_values[t] / beta * weight);
  }
  return sup;
}

}  // namespace selfnorm
