#include "selfnorm/lil.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "selfnorm/generators.hpp"
#include "selfnorm/roots.hpp"
#include "selfnorm/special.hpp"

namespace selfnorm {

namespace {
const double kExpE = std::exp(std::exp(1.0));  // e^e

bool is_example31(const ProcessPath& path) {
  return std::holds_alternative<Example31Params>(path.spec.params);
}
}  // namespace

LilConstants solve_h(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_h: lambda must be > 0");
  const double target = lambda * lambda;
  auto f = [&](double h) { return h - std::log1p(h) - target; };
  // h - log(1+h) increases from 0; bracket by doubling.
  double hi = std::max(2.0 * lambda, 1.0);
  int guard = 0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw std::logic_error("solve_h: bracketing failed");
  }
  const RootResult root = brent(f, 0.0, hi);
  LilConstants c;
  c.lambda = lambda;
  c.h = root.x;
  c.b_lambda = root.x / lambda;
  c.gamma = root.x / (1.0 + root.x);
  c.c_gamma_value = c_gamma(c.gamma);
  c.c_lambda = lambda / c.gamma;
  return c;
}

double e_k(int k) {
  if (k < 2) throw std::invalid_argument("e_k: requires k >= 2 (log k > 0)");
  const double kk = static_cast<double>(k);
  return std::exp(kk / std::log(kk));
}

StoppingTimes stopping_times(const ProcessPath& path, const LilConstants& c,
                             double epsilon, int j_max) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("stopping_times: epsilon must be >= 0");
  if (j_max < 2) throw std::invalid_argument("stopping_times: j_max >= 2");
  StoppingTimes out;
  const std::size_t horizon = path.horizon();

  for (int j = 2; j <= j_max; ++j) {
    const double level = e_k(j);
    std::uint64_t tj = kNeverStops;
    for (std::size_t n = 1; n <= horizon; ++n) {
      if (path.b_values[n] >= level) {  // V_n proxy: the path's own B
        tj = n;
        break;
      }
    }
    out.t.push_back(tj);
  }

  const double crossing = (1.0 + 3.0 * epsilon) * c.b_lambda;
  for (int j = 2; j <= j_max; ++j) {
    const std::uint64_t tj = out.t[static_cast<std::size_t>(j - 2)];
    std::uint64_t tauj = kNeverStops;
    if (tj != kNeverStops) {
      for (std::size_t n = tj; n <= horizon; ++n) {
        const double vn = path.b_values[n];
        if (vn <= kExpE) continue;  // loglog guard
        const double loglog = std::log(std::log(vn));
        const double v_small = vn / std::sqrt(loglog);
        const double centered =
            path.a_values[n] -
            windowed_mean_prefix(path, n, -c.lambda * v_small,
                                 c.c_lambda * v_small);
        if (centered >= crossing * vn * std::sqrt(loglog)) {
          tauj = n;
          break;
        }
      }
    }
    out.tau.push_back(tauj);
  }
  return out;
}

LilRatios lil_ratios(const ProcessPath& path, const LilConstants& constants,
                     const std::vector<std::uint64_t>& n_grid) {
  LilRatios out;
  out.n_grid = n_grid;
  const std::size_t horizon = path.horizon();
  for (std::uint64_t n : n_grid) {
    if (n < 1 || n > horizon)
      throw std::invalid_argument("lil_ratios: grid index outside the path");
    const double s = path.a_values[n];
    const double vn = path.b_values[n];
    const double sigma2 = path.cond_var[n];
    const double sigma = std::sqrt(sigma2);

    std::optional<double> lil, lil_guarded, centered, stout, envelope;
    if (vn > kExpE) {
      const double loglog = std::log(std::log(vn));
      lil = s / (vn * std::sqrt(loglog));
      envelope = s / (vn * std::sqrt(2.0 * loglog));
      const double v_small = vn / std::sqrt(loglog);
      const double mu_sum = windowed_mean_prefix(
          path, n, -constants.lambda * v_small, constants.c_lambda * v_small);
      centered = (s - mu_sum) / (vn * std::sqrt(loglog));
    }
    if (vn > 1.0) {
      const double guarded =
          std::max(1.0, vn > std::exp(1.0) ? std::log(std::log(vn)) : 0.0);
      lil_guarded = s / (vn * std::sqrt(guarded));
    }
    if (sigma > kExpE) {
      stout = s / std::sqrt(2.0 * sigma2 * std::log(std::log(sigma)));
    }
    out.lil.push_back(lil);
    out.lil_guarded.push_back(lil_guarded);
    out.centered.push_back(centered);
    out.stout.push_back(stout);
    out.envelope.push_back(envelope);
  }

  if (is_example31(path)) {
    for (std::size_t i = 1; i <= horizon; ++i) {
      const auto law = example31::law_at(i);
      if (!law.degenerate && path.increments[i - 1] == -law.m)
        ++out.heavy_atom_hits;
    }
  }
  return out;
}

std::vector<std::uint64_t> log_spaced_indices(std::uint64_t lo, std::uint64_t hi,
                                              int per_decade) {
  if (lo < 1 || hi < lo || per_decade < 1)
    throw std::invalid_argument("log_spaced_indices: bad arguments");
  std::set<std::uint64_t> pts;
  const double llo = std::log10(static_cast<double>(lo));
  const double lhi = std::log10(static_cast<double>(hi));
  for (double x = llo; x <= lhi + 1e-12; x += 1.0 / per_decade) {
    const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, x)));
    pts.insert(std::min(std::max(n, lo), hi));
  }
  pts.insert(hi);
  return {pts.begin(), pts.end()};
}

}  // namespace selfnorm
