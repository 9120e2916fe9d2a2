#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "selfnorm/process.hpp"

namespace selfnorm {

struct BoundValue {
  double value = 0.0;
  bool saturated = false;  // value >= 1: true but uninformative

  static BoundValue of(double v) { return {v, v >= 1.0}; }
};

// P(A/B^2 > x, 1/B^2 <= y) <= exp(-x^2/(2y)); x, y > 0.
BoundValue bound_thm21(double x, double y);
// Two-sided AR(1) corollary: P(|est - alpha| > x, sum Y^2 >= z) <= 2 exp(-x^2 z/2).
BoundValue bound_thm21_ar1(double x, double z);
// P(|A|/B > x, b <= B <= b s) <= 4 sqrt(e) x (1 + log s) exp(-x^2/2); x,s >= 1.
BoundValue bound_thm22(double x, double s);
// P(M_inf >= (alpha + beta <M>_inf) lambda) <= exp(-2 alpha beta lambda^2).
BoundValue bound_thm23(double alpha, double beta, double lambda);
// Theorems on (alpha + beta * normalizer) crossings, continuous or
// conditionally symmetric: exp(-x^2 (beta^2/(2y) + alpha beta)).
BoundValue bound_thm24_25(double x, double alpha, double beta, double y);
// Primary and simplified Bernstein-type bounds; primary <= simplified always.
std::pair<BoundValue, BoundValue> bound_thm26(double x, double y, double c);
// sqrt(2) exp(-x^2/4) for the (EB)-shifted statistic.
BoundValue bound_thm27(double x);

// |A| / sqrt(B^2 + (EB)^2).
double statistic_thm27(double a, double b, double mean_b);

struct Thm28Statistics {
  double ratio_29 = 0.0;   // A^+ / B
  double ratio_210 = 0.0;  // A^+ / (B sqrt(1 v log+ log(B v 1/B)))
};
Thm28Statistics statistic_thm28(double a, double b);

// ---- The density f and the L-function machinery ---------------------------

using LFunction = std::function<double(double)>;

// L(x) = 2 log(x e^e) (log log(x e^e))^2 for x >= 1, constant below 1.
double canonical_l(double x);
// L(e^u) in log form, representable far beyond the double range of x itself.
double canonical_l_log(double u);

// f(lambda) = 1 / (lambda L(max(lambda, 1/lambda))), lambda > 0.
double density_f(double lambda, const LFunction& l);

struct LConditionReport {
  bool scaling_ok = false;        // L(cy) <= 3c L(y)
  double scaling_worst = 0.0;     // max over grid of L(cy)/(3c L(y))
  bool squaring_ok = false;       // L(y^2) <= 3 L(y)
  double squaring_worst = 0.0;
  double integral = 0.0;          // int_1^inf dx/(x L(x))
  bool integral_ok = false;       // == 1/2 within tol
};
LConditionReport check_l_conditions(const LFunction& l, const LFunction& log_l,
                                    int grid_points = 64,
                                    double integral_tol = 1e-8);

// int_1^inf dx / (x L(x)) = int_0^inf du / log_l(u), by adaptive quadrature on
// decade panels of u = log x plus a closed-form tail for the canonical
// 2 (log x)(log log x)^2 decay class.
double l_tail_integral_log(const LFunction& log_l, double u_max = 1e9);

// Normalizing constant of the maximal inequality: 3 / int_0^1 e^{-x^2/2} dx.
double constant_212_rhs();

// g(A/B) / (L(A/B) v L(B v 1/B)) with g(x) = e^{x^2/2}/x for x >= 1, else 0.
double lhs_212_statistic(double a, double b, const LFunction& l);

// ---- Normalized statistics of the expectation-LIL section -----------------

// l(x) = sqrt(log(1 + log(1 + x))).
double graversen_peskir_l(double x);

struct Thm29Statistics {
  double sup_ratio = 0.0;  // sup_{t<=tau} |A_t| / sqrt(1 + B_t^2)
  double l_of_qv = 0.0;    // l(B_tau^2)
};
Thm29Statistics statistic_thm29(const ProcessPath& path, std::size_t tau);

// Phi_q(theta) = theta^q / q.
double phi_q(double theta, double q);

// sup_{n<=horizon} A_n (B_n v eta)^{-1} [1 v log+ L(B_n v eta)]^{-(q-1)/q}.
double statistic_thm210(const ProcessPath& path, double eta, double q,
                        const LFunction& l);

}  // namespace selfnorm
