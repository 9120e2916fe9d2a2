#include "selfnorm/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "selfnorm/special.hpp"

namespace selfnorm {

std::string CanonicalRegime::describe() const {
  switch (kind) {
    case Kind::kAllReal: return "all real lambda";
    case Kind::kAllNonnegative: return "lambda >= 0";
    case Kind::kRestricted:
      return "0 <= lambda <= " + std::to_string(lambda0);
  }
  return "?";
}

namespace {

struct FamilyNameVisitor {
  std::string operator()(const RademacherParams&) const { return "rademacher"; }
  std::string operator()(const CondSymParams&) const {
    return "conditionally_symmetric";
  }
  std::string operator()(const Ar1Params&) const { return "ar1"; }
  std::string operator()(const BrownianParams&) const { return "brownian"; }
  std::string operator()(const BoundedAboveParams&) const {
    return "bounded_above";
  }
  std::string operator()(const BernsteinParams&) const { return "bernstein"; }
  std::string operator()(const Example31Params&) const { return "example31"; }
  std::string operator()(const TruncatedA8Params&) const {
    return "truncated_a8";
  }
  std::string operator()(const StoppedRademacherParams&) const {
    return "stopped_rademacher";
  }
};

struct RegimeVisitor {
  CanonicalRegime operator()(const RademacherParams&) const {
    return CanonicalRegime::all_real();
  }
  CanonicalRegime operator()(const CondSymParams&) const {
    return CanonicalRegime::all_real();
  }
  CanonicalRegime operator()(const Ar1Params&) const {
    return CanonicalRegime::all_real();
  }
  CanonicalRegime operator()(const BrownianParams&) const {
    return CanonicalRegime::all_real();
  }
  CanonicalRegime operator()(const BoundedAboveParams& p) const {
    return CanonicalRegime::restricted(p.lambda0);
  }
  CanonicalRegime operator()(const BernsteinParams& p) const {
    return CanonicalRegime::restricted(p.lambda_cap);
  }
  CanonicalRegime operator()(const Example31Params& p) const {
    return CanonicalRegime::restricted(p.lambda0);
  }
  CanonicalRegime operator()(const TruncatedA8Params&) const {
    return CanonicalRegime::restricted(1.0);
  }
  CanonicalRegime operator()(const StoppedRademacherParams&) const {
    return CanonicalRegime::all_real();
  }
};

struct ValidateVisitor {
  std::uint64_t horizon;

  void require(bool ok, const char* constraint) const {
    if (!ok)
      throw std::invalid_argument(std::string("GeneratorSpec: ") + constraint);
  }
  void operator()(const RademacherParams&) const {}
  void operator()(const CondSymParams& p) const {
    require(p.base_scale > 0.0, "conditionally_symmetric requires base_scale > 0");
  }
  void operator()(const Ar1Params& p) const {
    require(std::isfinite(p.alpha), "ar1 requires finite alpha");
    require(p.noise_scale >= 0.0, "ar1 requires noise_scale >= 0");
  }
  void operator()(const BrownianParams& p) const {
    require(p.step > 0.0, "brownian requires step > 0");
  }
  void operator()(const BoundedAboveParams& p) const {
    require(p.m_bound > 0.0, "bounded_above requires m_bound > 0");
    require(p.p_up > 0.0 && p.p_up < 1.0, "bounded_above requires p_up in (0,1)");
    require(p.lambda0 > 0.0 && p.lambda0 <= 1.0 / p.m_bound,
            "bounded_above requires 0 < lambda0 <= 1/m_bound");
  }
  void operator()(const BernsteinParams& p) const {
    require(p.scale > 0.0, "bernstein requires scale > 0");
    require(p.lambda_cap > 0.0 && p.lambda_cap < 1.0 / p.scale,
            "bernstein requires 0 < lambda_cap < 1/scale");
  }
  void operator()(const Example31Params& p) const {
    require(horizon >= 3,
            "example31 requires horizon >= 3 (marginals are defined for n >= 3)");
    require(p.lambda0 > 0.0 && p.lambda0 <= 1.0 / example31::kMBound,
            "example31 requires 0 < lambda0 <= sqrt(3)");
  }
  void operator()(const TruncatedA8Params& p) const {
    require(p.gamma >= 0.0 && p.gamma < 1.0,
            "truncated_a8 requires gamma in [0,1)");
    require(p.scale > 0.0, "truncated_a8 requires scale > 0");
    require(p.lambda > 0.0 && p.lambda <= lemma_a8_lambda_max(p.gamma),
            "truncated_a8 requires 0 < lambda <= 1/C_gamma");
  }
  void operator()(const StoppedRademacherParams&) const {}
};

}  // namespace

std::string GeneratorSpec::family_name() const {
  return std::visit(FamilyNameVisitor{}, params);
}

CanonicalRegime GeneratorSpec::regime() const {
  return std::visit(RegimeVisitor{}, params);
}

void GeneratorSpec::validate() const {
  if (horizon < 1)
    throw std::invalid_argument("GeneratorSpec: horizon must be >= 1");
  std::visit(ValidateVisitor{horizon}, params);
}

double lemma_a8_lambda_max(double gamma) { return 1.0 / c_gamma(gamma); }

namespace example31 {

Law law_at(std::uint64_t n) {
  Law law{};
  if (n < kFirstValidN) {
    law.degenerate = true;
    return law;
  }
  const double nn = static_cast<double>(n);
  const double logn = std::log(nn);
  const double a = std::sqrt(logn / nn);
  const double b = 1.0 / (nn * logn * logn);
  law.x = 1.0 / std::sqrt(nn);
  law.p_minus = 0.5 - a - b;
  law.q = b;
  law.p_plus = 0.5 + a;
  law.m = (2.0 * a + b) / (b * std::sqrt(nn));
  law.var = law.x * law.x * (law.p_minus + law.p_plus) + law.m * law.m * law.q;
  law.degenerate = false;
  return law;
}

}  // namespace example31

SourceVariant make_source(const GeneratorSpec& spec, Rng rng) {
  return std::visit(
      [&](const auto& p) -> SourceVariant {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RademacherParams>)
          return RademacherSource(p, rng);
        else if constexpr (std::is_same_v<P, CondSymParams>)
          return CondSymSource(p, rng);
        else if constexpr (std::is_same_v<P, Ar1Params>)
          return Ar1Source(p, rng);
        else if constexpr (std::is_same_v<P, BrownianParams>)
          return BrownianSource(p, rng);
        else if constexpr (std::is_same_v<P, BoundedAboveParams>)
          return BoundedAboveSource(p, rng);
        else if constexpr (std::is_same_v<P, BernsteinParams>)
          return BernsteinSource(p, rng);
        else if constexpr (std::is_same_v<P, Example31Params>)
          return Example31Source(p, rng);
        else if constexpr (std::is_same_v<P, TruncatedA8Params>)
          return TruncatedA8Source(p, rng);
        else
          return StoppedRademacherSource(p, rng);
      },
      spec.params);
}

ProcessPath generate_path(const GeneratorSpec& spec, std::uint64_t master_seed,
                          std::uint64_t stream) {
  spec.validate();
  const std::size_t n = static_cast<std::size_t>(spec.horizon);
  ProcessPath path;
  path.spec = spec;
  path.regime = spec.regime();
  path.master_seed = master_seed;
  path.stream = stream;
  path.times.resize(n + 1);
  path.a_values.resize(n + 1);
  path.b_values.resize(n + 1);
  path.cond_var.resize(n + 1);
  path.increments.resize(n);
  path.times[0] = 0.0;
  path.a_values[0] = 0.0;
  path.b_values[0] = 0.0;
  path.cond_var[0] = 0.0;

  const double dt = std::holds_alternative<BrownianParams>(spec.params)
                        ? std::get<BrownianParams>(spec.params).step
                        : 1.0;
  if (std::holds_alternative<Ar1Params>(spec.params)) path.aux.assign(n + 1, 0.0);

  SourceVariant source = make_source(spec, path_rng(master_seed, stream));
  std::visit(
      [&](auto& src) {
        for (std::size_t i = 1; i <= n; ++i) {
          const Step s = src.next();
          path.increments[i - 1] = s.d;
          path.a_values[i] = s.a;
          path.b_values[i] = std::sqrt(s.b2);
          path.cond_var[i] = s.cv;
          path.times[i] = static_cast<double>(i) * dt;
          if constexpr (std::is_same_v<std::decay_t<decltype(src)>, Ar1Source>) {
            path.aux[i] = src.current_y();
          }
        }
        if constexpr (std::is_same_v<std::decay_t<decltype(src)>,
                                     StoppedRademacherSource>) {
          path.aux.assign(1, static_cast<double>(src.stop_time_));
        }
      },
      source);
  return path;
}

ProcessPath path_from_symmetric_increments(const std::vector<double>& increments) {
  ProcessPath path;
  const std::size_t n = increments.size();
  path.spec = GeneratorSpec{CondSymParams{}, n};
  path.regime = CanonicalRegime::all_real();
  path.times.resize(n + 1);
  path.a_values.resize(n + 1);
  path.b_values.resize(n + 1);
  path.cond_var.resize(n + 1);
  path.increments = increments;
  double a = 0.0, b2 = 0.0;
  path.times[0] = path.a_values[0] = path.b_values[0] = path.cond_var[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    a += increments[i - 1];
    b2 += increments[i - 1] * increments[i - 1];
    path.times[i] = static_cast<double>(i);
    path.a_values[i] = a;
    path.b_values[i] = std::sqrt(b2);
    path.cond_var[i] = b2;  // conditional law unknown; realized squares stand in
  }
  return path;
}

namespace {

double rademacher_window_mu(double c, double d) {
  double mu = 0.0;
  if (c <= -1.0 && -1.0 < d) mu += -0.5;
  if (c <= 1.0 && 1.0 < d) mu += 0.5;
  return mu;
}

// int_{-inf}^{x} t f(t) dt for Laplace(0, scale)
double laplace_partial(double scale, double x) {
  if (std::isinf(x)) return 0.0;  // both tails contribute zero mean
  if (x <= 0.0) return 0.5 * (x - scale) * std::exp(x / scale);
  return -0.5 * (x + scale) * std::exp(-x / scale);
}

}  // namespace

double windowed_mean_prefix(const ProcessPath& path, std::size_t n, double c,
                            double d) {
  if (!(c < d))
    throw std::invalid_argument("windowed_mean_prefix: c < d required");
  if (n > path.horizon())
    throw std::invalid_argument("windowed_mean_prefix: n exceeds horizon");
  const auto& params = path.spec.params;
  if (std::holds_alternative<RademacherParams>(params)) {
    return static_cast<double>(n) * rademacher_window_mu(c, d);
  }
  if (std::holds_alternative<BoundedAboveParams>(params)) {
    const auto& p = std::get<BoundedAboveParams>(params);
    const double down = -p.m_bound * p.p_up / (1.0 - p.p_up);
    double mu = 0.0;
    if (c <= p.m_bound && p.m_bound < d) mu += p.m_bound * p.p_up;
    if (c <= down && down < d) mu += down * (1.0 - p.p_up);
    return static_cast<double>(n) * mu;
  }
  if (std::holds_alternative<BrownianParams>(params)) {
    const auto& p = std::get<BrownianParams>(params);
    return static_cast<double>(n) *
           normal_windowed_mean(std::sqrt(p.step), c, d);
  }
  if (std::holds_alternative<Example31Params>(params)) {
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const auto law = example31::law_at(i);
      if (law.degenerate) continue;
      if (c <= -law.x && -law.x < d) sum += -law.x * law.p_minus;
      if (c <= -law.m && -law.m < d) sum += -law.m * law.q;
      if (c <= law.x && law.x < d) sum += law.x * law.p_plus;
    }
    return sum;
  }
  if (std::holds_alternative<Ar1Params>(params)) {
    const auto& p = std::get<Ar1Params>(params);
    if (path.aux.size() != path.times.size())
      throw std::invalid_argument("windowed_mean_prefix: AR1 path lacks Y series");
    double sum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double scale = std::abs(path.aux[j - 1]) * p.noise_scale;
      if (scale > 0.0) sum += normal_windowed_mean(scale, c, d);
    }
    return sum;
  }
  if (std::holds_alternative<CondSymParams>(params)) {
    const auto& p = std::get<CondSymParams>(params);
    double sum = 0.0;
    double scale = p.base_scale;
    for (std::size_t i = 1; i <= n; ++i) {
      sum += normal_windowed_mean(scale, c, d);
      const double di = path.increments[i - 1];
      const double shrink = di * di < 1.0 ? di * di : 1.0;
      scale = p.base_scale * std::sqrt(0.5 + 0.5 * shrink);
    }
    return sum;
  }
  if (std::holds_alternative<BernsteinParams>(params)) {
    const auto& p = std::get<BernsteinParams>(params);
    const double lo = laplace_partial(p.scale, c);
    const double hi = laplace_partial(p.scale, d);
    return static_cast<double>(n) * (hi - lo);
  }
  if (std::holds_alternative<StoppedRademacherParams>(params)) {
    const std::uint64_t stop =
        path.aux.empty() ? 0 : static_cast<std::uint64_t>(path.aux[0]);
    const std::uint64_t active =
        stop == 0 ? n : std::min<std::uint64_t>(n, stop);
    // increments after the stop are identically zero (window mean 0)
    return static_cast<double>(active) * rademacher_window_mu(c, d);
  }
  throw std::invalid_argument(
      "windowed_mean_prefix: no conditional-law formula for family " +
      path.spec.family_name());
}

}  // namespace selfnorm
