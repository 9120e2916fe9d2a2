#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace selfnorm {

// Finite positive mixing measures F on (0, lambda0).

// Half-Gaussian weight (y/sqrt(2pi)) exp(-lambda^2 y^2/2) on (0, inf);
// total mass 1/2.
struct GaussianScaleMeasure {
  double y = 1.0;
};

// dF = dl / (l log(1/l) (log log(1/l))^{1+delta}) on (0, e^-e);
// total mass 1/delta.
struct RobbinsSiegmundMeasure {
  double delta = 0.5;
};

struct DiscreteGridMeasure {
  std::vector<double> lambdas;  // support points, all > 0
  std::vector<double> weights;  // masses, all >= 0, sum > 0
};

using MixingMeasure =
    std::variant<GaussianScaleMeasure, RobbinsSiegmundMeasure, DiscreteGridMeasure>;

void validate_measure(const MixingMeasure& f);
double total_mass(const MixingMeasure& f);
// Upper end of the support (+inf for the Gaussian scale measure).
double support_lambda0(const MixingMeasure& f);

struct PsiOptions {
  double quad_rel_tol = 1e-11;
};

// log Psi(u, v) with Psi(u, v) = int exp(lambda u - lambda^2 v/2) dF(lambda).
// Computed with the peak exponent factored out, so it is finite wherever the
// true value is representable in logs.
double psi_log(double u, double v, const MixingMeasure& f,
               const PsiOptions& opts = {});
// Psi itself; +inf if the log exceeds the double range.
double psi(double u, double v, const MixingMeasure& f,
           const PsiOptions& opts = {});

struct MixtureIdentity {
  double lhs = 0.0;      // quadrature of the full Gaussian mixture
  double rhs = 0.0;      // (y/sqrt(b^2+y^2)) exp(a^2/(2(b^2+y^2)))
  double log_lhs = 0.0;  // stable forms for large exponents
  double log_rhs = 0.0;
};

// Integrates (y/sqrt(2pi)) exp(lambda a - lambda^2 b^2/2 - lambda^2 y^2/2)
// over all real lambda and pairs it with the closed form.
MixtureIdentity gaussian_mixture_identity(double a, double b, double y);

struct BetaOptions {
  double residual_rel_tol = 1e-9;  // |Psi(beta) - c| <= tol * c, verified
  PsiOptions psi;
};

// Unique u with Psi(u, v) = c. Bracketed Brent on log Psi, refined to
// machine precision in u; throws NumericalError if the verified residual
// exceeds the tolerance.
double beta_f(double v, double c, const MixingMeasure& f,
              const BetaOptions& opts = {});

// Boundary beta_F on a nondecreasing grid of v values, warm-starting each
// root from the previous one. Used to precompute crossing boundaries.
std::vector<double> beta_f_on_grid(const std::vector<double>& v_grid, double c,
                                   const MixingMeasure& f,
                                   const BetaOptions& opts = {});

// sqrt(2v [log2 v + (3/2 + delta) log3 v + log(c/(2 sqrt(pi)))]), the
// Robbins-Siegmund boundary with the o(1) term dropped. Requires v > e^e so
// log3 v is defined and nonnegative; errors if the bracket is negative.
double rs_asymptotic(double v, double c, double delta);

// F(0, lambda0)/c, the crossing probability bound.
double crossing_bound(double c, const MixingMeasure& f);

}  // namespace selfnorm
