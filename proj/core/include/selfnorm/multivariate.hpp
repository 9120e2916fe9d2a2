#pragma once

#include <cstdint>
#include <vector>

namespace selfnorm {

// Small dense symmetric matrices, row-major full storage.
class SymMatrix {
 public:
  SymMatrix() = default;
  SymMatrix(int k, double diag);  // diag * I
  static SymMatrix identity(int k) { return SymMatrix(k, 1.0); }

  int dim() const { return k_; }
  double& at(int i, int j) { return m_[static_cast<std::size_t>(i) * k_ + j]; }
  double at(int i, int j) const {
    return m_[static_cast<std::size_t>(i) * k_ + j];
  }

  // Fails (throws NumericalError) unless symmetric positive definite.
  void check_positive_definite() const;

  std::vector<double> solve(const std::vector<double>& rhs) const;
  double log_det() const;  // via Cholesky diagonal

 private:
  friend SymMatrix cholesky_lower(const SymMatrix& a);
  int k_ = 0;
  std::vector<double> m_;
};

SymMatrix cholesky_lower(const SymMatrix& a);

struct MvPathState {
  int k = 0;
  std::uint64_t n = 0;
  std::vector<double> q;  // running sum of the d_i
  SymMatrix gram;         // sum d_i d_i'

  explicit MvPathState(int dim);
  void add(const std::vector<double>& d);
};

// Q'(V + C)^{-1} Q via a symmetric factorization solve.
double mv_statistic(const MvPathState& state, const SymMatrix& v);
// log det(V + C) + 2 log a - log det V; positive for a > 1.
double mv_threshold(const MvPathState& state, const SymMatrix& v, double a);

struct MvCrossingConfig {
  int k = 1;
  double a = 2.0;
  std::uint64_t horizon = 10000;
  std::uint64_t replications = 100000;
  std::uint64_t master_seed = 1;
  double confidence = 0.9973;
  // consistency check of the rank-one update against a fresh factorization
  std::uint64_t recheck_every = 1000;
  double recheck_tol = 1e-8;
};

struct MvCrossingReport {
  double bound = 0.0;     // 1/a
  double estimate = 0.0;  // frequency of {statistic >= threshold for some n}
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double wilson_half_width = 0.0;
  std::uint64_t crossings = 0;
  std::uint64_t replications = 0;
  bool pass = false;  // estimate <= 1/a + half width
};

// Conditionally symmetric +/-1 coordinate increments (discrete-time event,
// inequality direction).
MvCrossingReport mv_crossing_probability(const MvCrossingConfig& config,
                                         const SymMatrix& v);

struct BrownianEqualityConfig {
  double a = 2.0;
  double v = 1.0;          // scalar V for the k = 1 statistic
  double dt = 1.0;         // base step; halved for the refinement run
  double uniform_until = 64.0;
  double total_time = 1e5;
  std::uint64_t replications = 100000;
  std::uint64_t master_seed = 1;
};

struct BrownianEqualityReport {
  double estimate = 0.0;  // crossing probability, bridge-corrected
  double se = 0.0;
  double gap = 0.0;       // 1/a - estimate (signed)
  std::uint64_t replications = 0;
  std::uint64_t grid_points = 0;
};

// k = 1 continuous-time crossing probability for |W_t| against
// r(t) = sqrt((v+t)(log((v+t)/v) + 2 log a)), estimated with exact grid
// increments and Brownian-bridge crossing probabilities per interval
// (survival-product estimator). The continuous-time probability is 1/a.
BrownianEqualityReport brownian_equality_estimate(
    const BrownianEqualityConfig& config);

}  // namespace selfnorm
