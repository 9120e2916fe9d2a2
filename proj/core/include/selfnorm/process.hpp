#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace selfnorm {

// Lambda range on which E exp{lambda*A - lambda^2 B^2/2} <= 1 is asserted
// for a given process pairing. Restricted means [0, lambda0].
struct CanonicalRegime {
  enum class Kind { kAllReal, kAllNonnegative, kRestricted };
  Kind kind = Kind::kAllReal;
  double lambda0 = 0.0;

  bool contains(double lambda) const {
    switch (kind) {
      case Kind::kAllReal: return true;
      case Kind::kAllNonnegative: return lambda >= 0.0;
      case Kind::kRestricted: return lambda >= 0.0 && lambda <= lambda0;
    }
    return false;
  }
  std::string describe() const;

  static CanonicalRegime all_real() { return {Kind::kAllReal, 0.0}; }
  static CanonicalRegime all_nonnegative() { return {Kind::kAllNonnegative, 0.0}; }
  static CanonicalRegime restricted(double lambda0) {
    return {Kind::kRestricted, lambda0};
  }
};

// ---- Generator families ---------------------------------------------------

// Fair +/-1 increments; A_n = sum d_i, B_n^2 = n.
struct RademacherParams {};

// d_i = s_i * eps_i with eps_i standard normal and the scale s_i a bounded
// function of the previous increment, so the increments are conditionally
// symmetric but not i.i.d. B_n^2 = sum d_i^2.
struct CondSymParams {
  double base_scale = 1.0;
};

// Y_n = alpha Y_{n-1} + eps_n; A_n = sum Y_{j-1} eps_j,
// B_n^2 = noise_scale^2 sum Y_{j-1}^2. noise_scale = 0 is the degenerate
// zero-noise test hook.
struct Ar1Params {
  double alpha = 0.5;
  double noise_scale = 1.0;
};

// Brownian motion sampled exactly on a uniform grid; A = W_t, B^2 = t.
struct BrownianParams {
  double step = 0.01;
};

// Two-point martingale increments d = +m_bound w.p. p_up, else
// -m_bound*p_up/(1-p_up); bounded above, conditional mean zero.
// Pairing per the Stout normalizer: B_n^2 = (1 + lambda0*m_bound/2) sum sigma_i^2.
struct BoundedAboveParams {
  double m_bound = 1.0;
  double lambda0 = 0.5;
  double p_up = 1.0 / 3.0;
};

// Laplace(scale) increments: E|d|^k = k! scale^k meets the Bernstein moment
// condition with equality (M = scale). Pairing B_n^2 = V_n^2/(1 - M*lambda_cap)
// makes the canonical bound hold on [0, lambda_cap].
struct BernsteinParams {
  double scale = 1.0;
  double lambda_cap = 0.5;
};

// Three-point law X_n in {-1/sqrt(n), -m_n, +1/sqrt(n)} with m_n solved from
// E X_n = 0. The printed probabilities only form a valid law for n >= 10;
// X_n = 0 before that (as for n = 1, 2). Pairing per the Stout normalizer
// with M = 1/sqrt(3).
struct Example31Params {
  double lambda0 = 1.0;
};

// y_n = scale * Z_n i.i.d. normal; the path accumulates
// A_n = sum (y_i - mu_i - y_i^2/lambda) with mu_i the truncated mean on
// [-gamma, lambda), so exp(A_n) is the lemma's supermartingale (B = 0).
struct TruncatedA8Params {
  double gamma = 0.3;
  double lambda = 1.0;
  double scale = 0.5;
};

// Fair random walk stopped at T = inf{n >= 16 : sum Y >= sqrt(2 n loglog n)},
// increments zeroed after T (capped at the horizon). Diagnostic family.
struct StoppedRademacherParams {};

using FamilyParams =
    std::variant<RademacherParams, CondSymParams, Ar1Params, BrownianParams,
                 BoundedAboveParams, BernsteinParams, Example31Params,
                 TruncatedA8Params, StoppedRademacherParams>;

struct GeneratorSpec {
  FamilyParams params;
  std::uint64_t horizon = 0;

  std::string family_name() const;
  CanonicalRegime regime() const;
  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  std::string to_json_string() const;
  static GeneratorSpec from_json_string(const std::string& json);
};

// ---- Paths -----------------------------------------------------------------

struct ProcessPath {
  std::vector<double> times;      // size horizon+1, times[0] = 0
  std::vector<double> a_values;   // A_n, a_values[0] = 0
  std::vector<double> b_values;   // B_n, nondecreasing, b_values[0] = 0
  std::vector<double> increments; // d_i, size horizon
  // prefix sums of E(d_i^2 | F_{i-1}), exact from the generator's law
  std::vector<double> cond_var;
  // family extras (AR1: the Y series; stopped walk: stop time at [0])
  std::vector<double> aux;
  GeneratorSpec spec;
  CanonicalRegime regime;
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;

  std::size_t horizon() const { return increments.size(); }
  double b_squared(std::size_t n) const { return b_values[n] * b_values[n]; }

  void check_invariants() const;
  std::string to_csv() const;  // columns n, A, B, d
};

ProcessPath generate_path(const GeneratorSpec& spec, std::uint64_t master_seed,
                          std::uint64_t stream = 0);

// Conditionally-symmetric path assembled from caller-supplied increments
// (Lemma A.4 pairing: B^2 = sum d_i^2). Used by tests and CSV ingestion.
ProcessPath path_from_symmetric_increments(const std::vector<double>& increments);

// Sum over i <= n of mu_i[c, d) = E{d_i 1(c <= d_i < d) | F_{i-1}}, computed
// from the family's conditional law (never estimated).
double windowed_mean_prefix(const ProcessPath& path, std::size_t n, double c,
                            double d);

}  // namespace selfnorm
