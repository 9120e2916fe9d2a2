#include "selfnorm/mixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "selfnorm/common.hpp"
#include "selfnorm/quadrature.hpp"
#include "selfnorm/roots.hpp"
#include "selfnorm/special.hpp"

namespace selfnorm {

namespace {
constexpr double kEMinusE = 0.06598803584531253708;  // e^{-e}
constexpr double kLog2Pi = 1.8378770664093454836;
// With W = 7, lambda(W) = exp(-e^7) underflows double, so the tail of the
// log-log substitution is exactly the measure's own tail for every
// representable u.
constexpr double kRsWMax = 7.0;

double rs_lambda(double w) { return std::exp(-std::exp(w)); }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

void validate_measure(const MixingMeasure& f) {
  if (const auto* g = std::get_if<GaussianScaleMeasure>(&f)) {
    require(g->y > 0.0, "GaussianScaleMeasure: y must be > 0");
  } else if (const auto* rs = std::get_if<RobbinsSiegmundMeasure>(&f)) {
    require(rs->delta > 0.0, "RobbinsSiegmundMeasure: delta must be > 0");
  } else {
    const auto& d = std::get<DiscreteGridMeasure>(f);
    require(!d.lambdas.empty(), "DiscreteGridMeasure: empty support");
    require(d.lambdas.size() == d.weights.size(),
            "DiscreteGridMeasure: support/mass length mismatch");
    double mass = 0.0;
    for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
      require(d.lambdas[i] > 0.0, "DiscreteGridMeasure: support must be > 0");
      require(d.weights[i] >= 0.0, "DiscreteGridMeasure: masses must be >= 0");
      mass += d.weights[i];
    }
    require(mass > 0.0, "DiscreteGridMeasure: total mass must be > 0");
  }
}

double total_mass(const MixingMeasure& f) {
  if (const auto* g = std::get_if<GaussianScaleMeasure>(&f)) {
    (void)g;
    return 0.5;
  }
  if (const auto* rs = std::get_if<RobbinsSiegmundMeasure>(&f))
    return 1.0 / rs->delta;
  const auto& d = std::get<DiscreteGridMeasure>(f);
  double mass = 0.0;
  for (double w : d.weights) mass += w;
  return mass;
}

double support_lambda0(const MixingMeasure& f) {
  if (std::holds_alternative<GaussianScaleMeasure>(f))
    return std::numeric_limits<double>::infinity();
  if (std::holds_alternative<RobbinsSiegmundMeasure>(f)) return kEMinusE;
  const auto& d = std::get<DiscreteGridMeasure>(f);
  return *std::max_element(d.lambdas.begin(), d.lambdas.end());
}

namespace {

double psi_log_discrete(double u, double v, const DiscreteGridMeasure& d) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
    if (d.weights[i] <= 0.0) continue;
    const double l = d.lambdas[i];
    m = std::max(m, l * u - 0.5 * l * l * v + std::log(d.weights[i]));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
    if (d.weights[i] <= 0.0) continue;
    const double l = d.lambdas[i];
    acc += std::exp(l * u - 0.5 * l * l * v + std::log(d.weights[i]) - m);
  }
  return m + std::log(acc);
}

double psi_log_gaussian(double u, double v, const GaussianScaleMeasure& g) {
  const double s2 = v + g.y * g.y;
  const double s = std::sqrt(s2);
  return std::log(g.y) - std::log(s) + 0.5 * u * u / s2 +
         normal_log_cdf(u / s);
}

double psi_log_rs(double u, double v, const RobbinsSiegmundMeasure& rs,
                  const PsiOptions& opts) {
  const double delta = rs.delta;
  auto exponent = [&](double lambda) { return lambda * u - 0.5 * lambda * lambda * v; };

  // Peak exponent to factor out: either the interior stationary point
  // lambda* = u/v or the left support endpoint.
  double m = 0.0;  // lambda -> 0 end contributes exponent 0
  m = std::max(m, exponent(kEMinusE));
  QuadOptions q;
  q.rel_tol = opts.quad_rel_tol;
  q.knots = {1.5, 2.0, 3.0, 4.5};
  if (v > 0.0 && u > 0.0) {
    const double lstar = u / v;
    if (lstar < kEMinusE) {
      m = std::max(m, exponent(lstar));
      const double wstar = std::log(std::log(1.0 / lstar));
      if (wstar > 1.0 && wstar < kRsWMax) {
        // exponent curvature -v gives lambda-width 1/sqrt(v); map to w
        const double width =
            std::max(1.0 / std::sqrt(v) / (lstar * std::log(1.0 / lstar)), 1e-4);
        for (double k : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) {
          const double p = wstar + k * width;
          if (p > 1.0 && p < kRsWMax) q.knots.push_back(p);
        }
      }
    }
  }
  const double shift = m;
  auto integrand = [&](double w) {
    const double lambda = rs_lambda(w);
    return std::exp(exponent(lambda) - shift) * std::pow(w, -1.0 - delta);
  };
  const double body = integrate(integrand, 1.0, kRsWMax, q).value;
  const double tail =
      std::exp(-shift) * std::pow(kRsWMax, -delta) / delta;
  return shift + std::log(body + tail);
}

}  // namespace

double psi_log(double u, double v, const MixingMeasure& f,
               const PsiOptions& opts) {
  validate_measure(f);
  require(v >= 0.0, "psi: requires v >= 0");
  if (const auto* d = std::get_if<DiscreteGridMeasure>(&f))
    return psi_log_discrete(u, v, *d);
  if (const auto* g = std::get_if<GaussianScaleMeasure>(&f))
    return psi_log_gaussian(u, v, *g);
  return psi_log_rs(u, v, std::get<RobbinsSiegmundMeasure>(f), opts);
}

double psi(double u, double v, const MixingMeasure& f, const PsiOptions& opts) {
  return std::exp(psi_log(u, v, f, opts));
}

MixtureIdentity gaussian_mixture_identity(double a, double b, double y) {
  require(b >= 0.0, "gaussian_mixture_identity: requires b >= 0");
  require(y > 0.0, "gaussian_mixture_identity: requires y > 0");
  MixtureIdentity out;
  const double s2 = b * b + y * y;
  const double s = std::sqrt(s2);
  out.log_rhs = std::log(y / s) + 0.5 * a * a / s2;
  out.rhs = std::exp(out.log_rhs);

  const double mu = a / s2;
  const double sd = 1.0 / s;
  const double shift = 0.5 * a * a / s2;
  QuadOptions opts;
  opts.rel_tol = 1e-12;
  opts.knots = {mu - 2.0 * sd, mu, mu + 2.0 * sd};
  auto integrand = [&](double lambda) {
    return y * std::exp(lambda * a - 0.5 * lambda * lambda * s2 - shift -
                        0.5 * kLog2Pi);
  };
  const double body =
      integrate(integrand, mu - 12.0 * sd, mu + 12.0 * sd, opts).value;
  out.log_lhs = shift + std::log(body);
  out.lhs = std::exp(out.log_lhs);
  return out;
}

double beta_f(double v, double c, const MixingMeasure& f,
              const BetaOptions& opts) {
  require(c > 0.0, "beta_f: requires c > 0");
  require(v > 0.0, "beta_f: requires v > 0");
  validate_measure(f);
  const double log_c = std::log(c);
  auto h = [&](double u) { return psi_log(u, v, f, opts.psi) - log_c; };
  const double hint = std::max(1.0, 2.0 * std::sqrt(v));
  const RootResult root = find_root_increasing(h, -hint, hint);
  const double residual = std::abs(std::expm1(h(root.x)));
  if (residual > opts.residual_rel_tol)
    throw NumericalError("beta_f: root residual above tolerance", residual);
  return root.x;
}

std::vector<double> beta_f_on_grid(const std::vector<double>& v_grid, double c,
                                   const MixingMeasure& f,
                                   const BetaOptions& opts) {
  std::vector<double> out(v_grid.size());
  if (v_grid.empty()) return out;
  const double log_c = std::log(c);
  double prev = beta_f(v_grid.front(), c, f, opts);
  out[0] = prev;
  double step_guess = std::max(1e-3 * (1.0 + std::abs(prev)), 1e-6);
  for (std::size_t i = 1; i < v_grid.size(); ++i) {
    if (v_grid[i] < v_grid[i - 1])
      throw std::invalid_argument("beta_f_on_grid: v grid must be nondecreasing");
    auto h = [&](double u) { return psi_log(u, v_grid[i], f, opts.psi) - log_c; };
    // beta is nondecreasing in v, so the previous root brackets from below
    double lo = prev;
    double hi = prev + step_guess;
    int guard = 0;
    while (h(hi) < 0.0) {
      lo = hi;
      hi += step_guess;
      step_guess *= 2.0;
      if (++guard > 200)
        throw NumericalError("beta_f_on_grid: bracket expansion failed", h(hi));
    }
    const RootResult root = brent(h, lo, hi);
    const double residual = std::abs(std::expm1(h(root.x)));
    if (residual > opts.residual_rel_tol)
      throw NumericalError("beta_f_on_grid: root residual above tolerance",
                           residual);
    step_guess = std::max((root.x - prev) * 2.0, 1e-6);
    prev = root.x;
    out[i] = prev;
  }
  return out;
}

double rs_asymptotic(double v, double c, double delta) {
  require(delta > 0.0, "rs_asymptotic: requires delta > 0");
  require(c > 0.0, "rs_asymptotic: requires c > 0");
  const double ee = std::exp(std::exp(1.0));
  if (!(v > ee))
    throw std::invalid_argument(
        "rs_asymptotic: requires v > e^e so that log3(v) is defined");
  const double log2v = std::log(std::log(v));
  const double log3v = std::log(log2v);
  const double bracket =
      log2v + (1.5 + delta) * log3v + std::log(c / (2.0 * std::sqrt(M_PI)));
  if (bracket < 0.0)
    throw std::invalid_argument(
        "rs_asymptotic: asymptotic bracket negative at this (v, c, delta)");
  return std::sqrt(2.0 * v * bracket);
}

double crossing_bound(double c, const MixingMeasure& f) {
  require(c > 0.0, "crossing_bound: requires c > 0");
  return total_mass(f) / c;
}

}  // namespace selfnorm
