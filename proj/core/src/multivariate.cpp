#include "selfnorm/multivariate.hpp"

#include <cmath>
#include <stdexcept>

#include "selfnorm/common.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/special.hpp"
#include "selfnorm/stats.hpp"

namespace selfnorm {

SymMatrix::SymMatrix(int k, double diag) : k_(k) {
  if (k < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
  m_.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) at(i, i) = diag;
}

SymMatrix cholesky_lower(const SymMatrix& a) {
  const int k = a.dim();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(a.at(i, j) - a.at(j, i)) >
          1e-12 * (1.0 + std::abs(a.at(i, j))))
        throw NumericalError("cholesky: matrix not symmetric");
  SymMatrix l(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a.at(i, j);
      for (int p = 0; p < j; ++p) sum -= l.at(i, p) * l.at(j, p);
      if (i == j) {
        if (!(sum > 0.0))
          throw NumericalError("cholesky: matrix not positive definite", sum);
        l.at(i, i) = std::sqrt(sum);
      } else {
        l.at(i, j) = sum / l.at(j, j);
      }
    }
  }
  return l;
}

void SymMatrix::check_positive_definite() const { (void)cholesky_lower(*this); }

std::vector<double> SymMatrix::solve(const std::vector<double>& rhs) const {
  if (static_cast<int>(rhs.size()) != k_)
    throw std::invalid_argument("SymMatrix::solve: size mismatch");
  const SymMatrix l = cholesky_lower(*this);
  std::vector<double> x(rhs);
  for (int i = 0; i < k_; ++i) {
    double sum = x[i];
    for (int j = 0; j < i; ++j) sum -= l.at(i, j) * x[j];
    x[i] = sum / l.at(i, i);
  }
  for (int i = k_ - 1; i >= 0; --i) {
    double sum = x[i];
    for (int j = i + 1; j < k_; ++j) sum -= l.at(j, i) * x[j];
    x[i] = sum / l.at(i, i);
  }
  return x;
}

double SymMatrix::log_det() const {
  const SymMatrix l = cholesky_lower(*this);
  double s = 0.0;
  for (int i = 0; i < k_; ++i) s += std::log(l.at(i, i));
  return 2.0 * s;
}

MvPathState::MvPathState(int dim) : k(dim), gram(dim, 0.0) {
  if (dim < 1) throw std::invalid_argument("MvPathState: dimension must be >= 1");
  q.assign(dim, 0.0);
}

void MvPathState::add(const std::vector<double>& d) {
  if (static_cast<int>(d.size()) != k)
    throw std::invalid_argument("MvPathState::add: size mismatch");
  for (int i = 0; i < k; ++i) {
    q[i] += d[i];
    for (int j = 0; j < k; ++j) gram.at(i, j) += d[i] * d[j];
  }
  ++n;
}

namespace {

SymMatrix sum_matrix(const SymMatrix& v, const SymMatrix& c) {
  SymMatrix out(v.dim(), 0.0);
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < v.dim(); ++j) out.at(i, j) = v.at(i, j) + c.at(i, j);
  return out;
}

}  // namespace

double mv_statistic(const MvPathState& state, const SymMatrix& v) {
  if (v.dim() != state.k)
    throw std::invalid_argument("mv_statistic: dimension mismatch");
  if (state.n == 0) return 0.0;
  const SymMatrix total = sum_matrix(v, state.gram);
  const std::vector<double> x = total.solve(state.q);
  double s = 0.0;
  for (int i = 0; i < state.k; ++i) s += state.q[i] * x[i];
  return s;
}

double mv_threshold(const MvPathState& state, const SymMatrix& v, double a) {
  if (!(a > 1.0)) throw std::invalid_argument("mv_threshold: requires a > 1");
  const SymMatrix total = sum_matrix(v, state.gram);
  return total.log_det() + 2.0 * std::log(a) - v.log_det();
}

MvCrossingReport mv_crossing_probability(const MvCrossingConfig& config,
                                         const SymMatrix& v) {
  if (!(config.a > 1.0))
    throw std::invalid_argument("mv_crossing_probability: requires a > 1");
  if (v.dim() != config.k)
    throw std::invalid_argument("mv_crossing_probability: V dimension mismatch");
  v.check_positive_definite();

  const int k = config.k;
  const double log_det_v = v.log_det();
  const double two_log_a = 2.0 * std::log(config.a);
  MvCrossingReport report;
  report.bound = 1.0 / config.a;
  report.replications = config.replications;

  std::vector<std::uint8_t> crossed(config.replications, 0);
  std::vector<double> d(k), md(k), mq(k);
  for (std::uint64_t rep = 0; rep < config.replications; ++rep) {
    Rng rng = Rng::substream(config.master_seed, rep);
    // inv = (V + C_n)^{-1} maintained by rank-one updates
    SymMatrix inv(k, 0.0);
    for (int col = 0; col < k; ++col) {
      std::vector<double> e(k, 0.0);
      e[col] = 1.0;
      const std::vector<double> x = v.solve(e);
      for (int row = 0; row < k; ++row) inv.at(row, col) = x[row];
    }
    double log_det = log_det_v;
    std::vector<double> q(k, 0.0);
    MvPathState oracle_state(k);  // for periodic from-scratch checks

    for (std::uint64_t n = 1; n <= config.horizon; ++n) {
      for (int i = 0; i < k; ++i) d[i] = static_cast<double>(rng.rademacher());
      // Sherman-Morrison update of inv and log det
      for (int i = 0; i < k; ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += inv.at(i, j) * d[j];
        md[i] = s;
      }
      double dmd = 0.0;
      for (int i = 0; i < k; ++i) dmd += d[i] * md[i];
      const double denom = 1.0 + dmd;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          inv.at(i, j) -= md[i] * md[j] / denom;
      log_det += std::log(denom);
      for (int i = 0; i < k; ++i) q[i] += d[i];
      oracle_state.add(d);

      double stat = 0.0;
      for (int i = 0; i < k; ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += inv.at(i, j) * q[j];
        mq[i] = s;
      }
      for (int i = 0; i < k; ++i) stat += q[i] * mq[i];
      const double threshold = log_det + two_log_a - log_det_v;

      if (config.recheck_every != 0 && n % config.recheck_every == 0) {
        const double stat_oracle = mv_statistic(oracle_state, v);
        const double thr_oracle = mv_threshold(oracle_state, v, config.a);
        const double rel =
            std::abs(stat - stat_oracle) / (1.0 + std::abs(stat_oracle)) +
            std::abs(threshold - thr_oracle) / (1.0 + std::abs(thr_oracle));
        if (rel > config.recheck_tol)
          throw NumericalError(
              "mv_crossing_probability: rank-one update drifted from "
              "from-scratch factorization",
              rel);
      }

      if (stat >= threshold) {
        crossed[rep] = 1;
        break;
      }
    }
  }

  std::uint64_t count = 0;
  for (std::uint8_t c : crossed) count += c;
  report.crossings = count;
  const double z = normal_quantile(0.5 * (1.0 + config.confidence));
  const WilsonInterval w = wilson_interval(count, config.replications, z);
  report.estimate = w.estimate;
  report.wilson_lo = w.lo;
  report.wilson_hi = w.hi;
  report.wilson_half_width = w.half_width;
  report.pass = report.estimate <= report.bound + w.half_width;
  return report;
}

BrownianEqualityReport brownian_equality_estimate(
    const BrownianEqualityConfig& config) {
  if (!(config.a > 1.0))
    throw std::invalid_argument("brownian_equality_estimate: requires a > 1");
  if (!(config.v > 0.0) || !(config.dt > 0.0) || !(config.total_time > 0.0))
    throw std::invalid_argument("brownian_equality_estimate: bad parameters");

  // Grid: uniform dt to uniform_until, then steps growing with t so the
  // horizon can be large while early crossings stay finely monitored.
  std::vector<double> ts{0.0};
  double t = 0.0;
  while (t < config.total_time) {
    t += config.dt * std::max(1.0, t / config.uniform_until);
    ts.push_back(std::min(t, config.total_time));
  }
  const std::size_t m = ts.size();
  std::vector<double> barrier(m), steps(m - 1), sqrt_steps(m - 1);
  const double two_log_a = 2.0 * std::log(config.a);
  for (std::size_t i = 0; i < m; ++i) {
    const double vt = config.v + ts[i];
    barrier[i] = std::sqrt(vt * (std::log(vt / config.v) + two_log_a));
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    steps[i] = ts[i + 1] - ts[i];
    sqrt_steps[i] = std::sqrt(steps[i]);
  }

  std::vector<double> cross_prob(config.replications);
  for (std::uint64_t rep = 0; rep < config.replications; ++rep) {
    Rng rng = Rng::substream(config.master_seed, rep);
    double w = 0.0;
    double survival = 1.0;
    double gap_up_prev = barrier[0];
    double gap_dn_prev = barrier[0];
    for (std::size_t i = 0; i + 1 < m; ++i) {
      w += sqrt_steps[i] * rng.normal();
      const double gap_up = barrier[i + 1] - w;
      const double gap_dn = barrier[i + 1] + w;
      if (gap_up <= 0.0 || gap_dn <= 0.0) {
        survival = 0.0;
        break;
      }
      // Brownian bridge against the linear chord of each barrier.
      const double pu = std::exp(-2.0 * gap_up_prev * gap_up / steps[i]);
      const double pd = std::exp(-2.0 * gap_dn_prev * gap_dn / steps[i]);
      const double stay = 1.0 - pu - pd;
      survival *= stay > 0.0 ? stay : 0.0;
      if (survival == 0.0) break;
      gap_up_prev = gap_up;
      gap_dn_prev = gap_dn;
    }
    cross_prob[rep] = 1.0 - survival;
  }

  BrownianEqualityReport report;
  const MeanSe ms = mean_and_se(cross_prob);
  report.estimate = ms.mean;
  report.se = ms.se;
  report.gap = 1.0 / config.a - ms.mean;
  report.replications = config.replications;
  report.grid_points = m;
  return report;
}

}  // namespace selfnorm
