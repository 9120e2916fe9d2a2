#include <doctest.h>

#include <cmath>

#include "selfnorm/common.hpp"
#include "selfnorm/multivariate.hpp"
#include "selfnorm/rng.hpp"

using namespace selfnorm;

TEST_SUITE_BEGIN("multivariate");

TEST_CASE("cholesky solve and log-det on a hand-checkable matrix") {
  SymMatrix a(2, 0.0);
  a.at(0, 0) = 4.0;
  a.at(0, 1) = a.at(1, 0) = 2.0;
  a.at(1, 1) = 3.0;
  CHECK(a.log_det() == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  const auto x = a.solve({2.0, 3.0});  // solution (0, 1)
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));

  SymMatrix bad(2, 0.0);
  bad.at(0, 0) = 1.0;
  bad.at(1, 1) = -1.0;
  CHECK_THROWS_AS(bad.check_positive_definite(), NumericalError);
}

TEST_CASE("empty state: statistic 0, threshold 2 log a") {
  MvPathState state(3);
  const SymMatrix v = SymMatrix::identity(3);
  CHECK(mv_statistic(state, v) == 0.0);
  CHECK(mv_threshold(state, v, std::exp(1.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mv_threshold(state, v, 2.0) > 0.0);
  CHECK_THROWS_AS((void)mv_threshold(state, v, 1.0), std::invalid_argument);
}

TEST_CASE("scalar case: V=[1], one increment d=1, a=e") {
  MvPathState state(1);
  state.add({1.0});
  const SymMatrix v = SymMatrix::identity(1);
  CHECK(mv_statistic(state, v) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mv_threshold(state, v, std::exp(1.0)) ==
        doctest::Approx(std::log(2.0) + 2.0).epsilon(1e-14));
}

TEST_CASE("crossing indicator is invariant under d -> c d, V -> c^2 V") {
  Rng rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform() * 3.0);
    const double scale = std::exp(3.0 * (rng.uniform() - 0.5));
    const double a = 1.5 + 3.0 * rng.uniform();
    SymMatrix v(k, 0.0);
    for (int i = 0; i < k; ++i) {
      v.at(i, i) = 0.5 + rng.uniform();
      for (int j = 0; j < i; ++j) {
        const double off = 0.2 * (rng.uniform() - 0.5);
        v.at(i, j) = v.at(j, i) = off;
      }
    }
    SymMatrix v_scaled(k, 0.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) v_scaled.at(i, j) = scale * scale * v.at(i, j);

    MvPathState state(k), state_scaled(k);
    bool crossed = false, crossed_scaled = false;
    for (int n = 0; n < 40; ++n) {
      std::vector<double> d(k), ds(k);
      for (int i = 0; i < k; ++i) {
        d[i] = rng.normal();
        ds[i] = scale * d[i];
      }
      state.add(d);
      state_scaled.add(ds);
      const bool c1 =
          mv_statistic(state, v) >= mv_threshold(state, v, a);
      const bool c2 = mv_statistic(state_scaled, v_scaled) >=
                      mv_threshold(state_scaled, v_scaled, a);
      CHECK(c1 == c2);
      crossed = crossed || c1;
      crossed_scaled = crossed_scaled || c2;
    }
    CHECK(crossed == crossed_scaled);
    // the statistic itself is scale-invariant
    CHECK(mv_statistic(state, v) ==
          doctest::Approx(mv_statistic(state_scaled, v_scaled)).epsilon(1e-9));
  }
}

TEST_CASE("statistic nonnegative, threshold positive, gram updates rank-one psd") {
  Rng rng(999);
  MvPathState state(3);
  const SymMatrix v = SymMatrix::identity(3);
  double prev_threshold = mv_threshold(state, v, 2.0);
  for (int n = 0; n < 30; ++n) {
    std::vector<double> d(3);
    for (auto& x : d) x = rng.normal();
    state.add(d);
    CHECK(mv_statistic(state, v) >= 0.0);
    const double thr = mv_threshold(state, v, 2.0);
    CHECK(thr > 0.0);
    CHECK(thr >= prev_threshold);  // det(V + C) nondecreasing in C psd order
    prev_threshold = thr;
  }
}

TEST_CASE("small crossing campaign passes the 1/a bound") {
  MvCrossingConfig config;
  config.k = 2;
  config.a = 2.0;
  config.horizon = 400;
  config.replications = 4000;
  config.master_seed = 7;
  const MvCrossingReport rep =
      mv_crossing_probability(config, SymMatrix::identity(2));
  CHECK(rep.bound == doctest::Approx(0.5));
  CHECK(rep.estimate <= 0.5 + rep.wilson_half_width);
  CHECK(rep.pass);
  CHECK(rep.replications == 4000);
}

TEST_CASE("crossing campaign is deterministic in the seed") {
  MvCrossingConfig config;
  config.k = 1;
  config.a = 3.0;
  config.horizon = 200;
  config.replications = 2000;
  config.master_seed = 123;
  const MvCrossingReport r1 =
      mv_crossing_probability(config, SymMatrix::identity(1));
  const MvCrossingReport r2 =
      mv_crossing_probability(config, SymMatrix::identity(1));
  CHECK(r1.estimate == r2.estimate);
  CHECK(r1.crossings == r2.crossings);
}

TEST_CASE("rank-one update agrees with from-scratch factorizations") {
  // recheck_every = 50 exercises the consistency path; a drift would throw
  MvCrossingConfig config;
  config.k = 5;
  config.a = 2.0;
  config.horizon = 300;
  config.replications = 200;
  config.master_seed = 5;
  config.recheck_every = 50;
  config.recheck_tol = 1e-8;
  CHECK_NOTHROW((void)mv_crossing_probability(config, SymMatrix::identity(5)));
}

TEST_CASE("a -> infinity drives the crossing frequency to zero") {
  MvCrossingConfig config;
  config.k = 1;
  config.horizon = 200;
  config.replications = 2000;
  config.master_seed = 11;
  config.a = 1e6;
  const MvCrossingReport rep =
      mv_crossing_probability(config, SymMatrix::identity(1));
  CHECK(rep.estimate <= 1e-3);
}

TEST_CASE("brownian equality estimate approaches 1/a as the step shrinks") {
  BrownianEqualityConfig config;
  config.a = 2.0;
  config.v = 1.0;
  config.dt = 1.0;
  config.uniform_until = 64.0;
  config.total_time = 2e4;
  config.replications = 20000;
  config.master_seed = 99;
  const BrownianEqualityReport coarse = brownian_equality_estimate(config);
  config.dt = 0.5;
  const BrownianEqualityReport fine = brownian_equality_estimate(config);
  CHECK(std::abs(coarse.gap) < 0.05);
  CHECK(std::abs(fine.gap) < std::abs(coarse.gap));
  CHECK(fine.estimate == doctest::Approx(0.5).epsilon(0.02));
}

TEST_SUITE_END();
