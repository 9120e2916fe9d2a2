#pragma once

#include <cmath>
#include <cstdint>
#include <variant>

#include "selfnorm/process.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/special.hpp"

namespace selfnorm {

// Streaming step sources. Monte Carlo scans consume these directly so paths
// never have to be materialized (memory O(1) per replication). `next()`
// returns the state after step n = 1, 2, ...
struct Step {
  double d;        // increment d_n
  double a;        // A_n
  double b2;       // B_n^2
  double cv;       // sum_{i<=n} E(d_i^2 | F_{i-1})
};

struct RademacherSource {
  explicit RademacherSource(RademacherParams, Rng rng) : rng_(rng) {}
  Step next() {
    const double d = static_cast<double>(rng_.rademacher());
    a_ += d;
    n_ += 1.0;
    return {d, a_, n_, n_};
  }
  Rng rng_;
  double a_ = 0.0;
  double n_ = 0.0;
};

struct CondSymSource {
  explicit CondSymSource(CondSymParams p, Rng rng) : rng_(rng), base_(p.base_scale) {}
  Step next() {
    const double s = scale_;
    const double d = s * rng_.normal();
    a_ += d;
    b2_ += d * d;
    cv_ += s * s;
    const double shrink = d * d < 1.0 ? d * d : 1.0;
    scale_ = base_ * std::sqrt(0.5 + 0.5 * shrink);
    return {d, a_, b2_, cv_};
  }
  Rng rng_;
  double base_;
  double scale_ = base_;
  double a_ = 0.0, b2_ = 0.0, cv_ = 0.0;
};

struct Ar1Source {
  explicit Ar1Source(Ar1Params p, Rng rng)
      : rng_(rng), alpha_(p.alpha), ns_(p.noise_scale) {}
  Step next() {
    const double eps = ns_ == 0.0 ? 0.0 : ns_ * rng_.normal();
    const double d = y_ * eps;
    a_ += d;
    b2_ += ns_ * ns_ * y_ * y_;
    y_prev_ = y_;
    y_ = alpha_ * y_ + eps;
    return {d, a_, b2_, b2_};
  }
  double current_y() const { return y_; }
  Rng rng_;
  double alpha_, ns_;
  double y_ = 0.0, y_prev_ = 0.0;
  double a_ = 0.0, b2_ = 0.0;
};

struct BrownianSource {
  explicit BrownianSource(BrownianParams p, Rng rng) : rng_(rng), step_(p.step) {}
  Step next() {
    const double d = std::sqrt(step_) * rng_.normal();
    a_ += d;
    t_ += step_;
    return {d, a_, t_, t_};
  }
  Rng rng_;
  double step_;
  double a_ = 0.0, t_ = 0.0;
};

struct BoundedAboveSource {
  explicit BoundedAboveSource(BoundedAboveParams p, Rng rng)
      : rng_(rng), m_(p.m_bound), p_up_(p.p_up),
        down_(-p.m_bound * p.p_up / (1.0 - p.p_up)),
        sigma2_(p.m_bound * p.m_bound * p.p_up / (1.0 - p.p_up)),
        stout_factor_(1.0 + 0.5 * p.lambda0 * p.m_bound) {}
  Step next() {
    const double d = rng_.uniform() < p_up_ ? m_ : down_;
    a_ += d;
    cv_ += sigma2_;
    return {d, a_, stout_factor_ * cv_, cv_};
  }
  Rng rng_;
  double m_, p_up_, down_, sigma2_, stout_factor_;
  double a_ = 0.0, cv_ = 0.0;
};

struct BernsteinSource {
  explicit BernsteinSource(BernsteinParams p, Rng rng)
      : rng_(rng), scale_(p.scale), sigma2_(2.0 * p.scale * p.scale),
        inflation_(1.0 / (1.0 - p.scale * p.lambda_cap)) {}
  Step next() {
    const double d = rng_.laplace(scale_);
    a_ += d;
    v2_ += sigma2_;
    return {d, a_, inflation_ * v2_, v2_};
  }
  Rng rng_;
  double scale_, sigma2_, inflation_;
  double a_ = 0.0, v2_ = 0.0;
};

namespace example31 {
// First n at which the printed three-point probabilities are a valid law.
inline constexpr std::uint64_t kFirstValidN = 10;
inline constexpr double kMBound = 0.57735026918962576;  // 1/sqrt(3)

struct Law {
  double x;        // +/-1/sqrt(n) magnitude
  double m;        // heavy negative atom
  double p_minus;  // P{X = -x}
  double q;        // P{X = -m}
  double p_plus;   // P{X = +x}
  double var;      // E X^2
  bool degenerate; // X = 0
};

// m_n solved exactly from E X_n = 0 (linear in m_n); equals
// 2 (log n)^{5/2} + n^{-1/2} in closed form.
Law law_at(std::uint64_t n);
}  // namespace example31

struct Example31Source {
  explicit Example31Source(Example31Params p, Rng rng)
      : rng_(rng), stout_factor_(1.0 + 0.5 * p.lambda0 * example31::kMBound) {}
  Step next() {
    ++n_;
    const auto law = example31::law_at(n_);
    double d = 0.0;
    if (!law.degenerate) {
      const double u = rng_.uniform();
      d = u < law.p_minus ? -law.x : (u < law.p_minus + law.q ? -law.m : law.x);
      cv_ += law.var;
    }
    a_ += d;
    return {d, a_, stout_factor_ * cv_, cv_};
  }
  Rng rng_;
  double stout_factor_;
  std::uint64_t n_ = 0;
  double a_ = 0.0, cv_ = 0.0;
};

struct TruncatedA8Source {
  explicit TruncatedA8Source(TruncatedA8Params p, Rng rng)
      : rng_(rng), scale_(p.scale), lambda_(p.lambda),
        mu_(normal_windowed_mean(p.scale, -p.gamma, p.lambda)) {
    const double s2 = p.scale * p.scale;
    const double mu = mu_;
    dvar_ = s2 + mu * mu + 2.0 * mu * s2 / p.lambda +
            3.0 * s2 * s2 / (p.lambda * p.lambda);
  }
  Step next() {
    const double y = scale_ * rng_.normal();
    const double d = y - mu_ - y * y / lambda_;
    a_ += d;
    cv_ += dvar_;
    return {d, a_, 0.0, cv_};
  }
  Rng rng_;
  double scale_, lambda_, mu_, dvar_;
  double a_ = 0.0, cv_ = 0.0;
};

struct StoppedRademacherSource {
  explicit StoppedRademacherSource(StoppedRademacherParams, Rng rng) : rng_(rng) {}
  Step next() {
    ++n_;
    double d = 0.0;
    if (!stopped_) {
      d = static_cast<double>(rng_.rademacher());
      walk_ += d;
      a_ += d;
      b2_ += 1.0;
      cv_ += 1.0;
      if (n_ >= 16 &&
          walk_ >= std::sqrt(2.0 * static_cast<double>(n_) *
                             std::log(std::log(static_cast<double>(n_))))) {
        stopped_ = true;
        stop_time_ = n_;
      }
    }
    return {d, a_, b2_, cv_};
  }
  Rng rng_;
  std::uint64_t n_ = 0;
  std::uint64_t stop_time_ = 0;  // 0 = not stopped
  double walk_ = 0.0;
  bool stopped_ = false;
  double a_ = 0.0, b2_ = 0.0, cv_ = 0.0;
};

using SourceVariant =
    std::variant<RademacherSource, CondSymSource, Ar1Source, BrownianSource,
                 BoundedAboveSource, BernsteinSource, Example31Source,
                 TruncatedA8Source, StoppedRademacherSource>;

SourceVariant make_source(const GeneratorSpec& spec, Rng rng);

inline Rng path_rng(std::uint64_t master_seed, std::uint64_t stream) {
  return Rng::substream(master_seed, stream);
}

// Admissible upper end of lambda_n in the truncated-increments lemma: 1/C_gamma.
double lemma_a8_lambda_max(double gamma);

}  // namespace selfnorm
