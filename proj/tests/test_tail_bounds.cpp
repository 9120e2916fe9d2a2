#include <doctest.h>

#include <cmath>

#include "selfnorm/generators.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/tail_bounds.hpp"

using namespace selfnorm;

TEST_SUITE_BEGIN("tail_bounds");

TEST_CASE("theorem 2.1 values and monotonicity") {
  CHECK(bound_thm21(1.0, 1.0).value ==
        doctest::Approx(0.6065306597126334).epsilon(1e-14));
  CHECK(!bound_thm21(1.0, 1.0).saturated);
  CHECK(bound_thm21(1e-9, 1.0).saturated);  // vacuous at the x -> 0 limit
  CHECK_THROWS_AS((void)bound_thm21(0.0, 1.0), std::invalid_argument);
  // decreasing in x, increasing in y
  double prev = 2.0;
  for (double x = 0.25; x <= 4.0; x += 0.25) {
    const double v = bound_thm21(x, 1.0).value;
    CHECK(v < prev);
    prev = v;
  }
  prev = 0.0;
  for (double y = 0.25; y <= 4.0; y += 0.25) {
    const double v = bound_thm21(1.0, y).value;
    CHECK(v > prev);
    prev = v;
  }
  // AR(1) corollary doubles the one-sided bound
  CHECK(bound_thm21_ar1(1.0, 4.0).value ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("theorem 2.2 values") {
  CHECK(bound_thm22(1.0, 1.0).value == doctest::Approx(4.0).epsilon(1e-14));
  // frozen from direct evaluation: 24 sqrt(e) e^{-4.5}
  CHECK(bound_thm22(3.0, std::exp(1.0)).value ==
        doctest::Approx(0.43957413266809972).epsilon(1e-12));
  CHECK(bound_thm22(8.0, 2.0).value < 1e-10);  // gaussian tail dominates
  CHECK_THROWS_AS((void)bound_thm22(0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS((void)bound_thm22(2.0, 0.5), std::invalid_argument);
}

TEST_CASE("theorem 2.3 values") {
  CHECK(bound_thm23(1.0, 1.0, 1.0).value ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(bound_thm23(1.0, 1.0, 1e-8).saturated);
}

TEST_CASE("theorems 2.4/2.5 values") {
  CHECK(bound_thm24_25(1.0, 0.0, 1.0, 1.0).value ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(bound_thm24_25(0.0, 1.0, 1.0, 1.0).value == 1.0);
  CHECK(bound_thm24_25(0.0, 1.0, 1.0, 1.0).saturated);
}

TEST_CASE("theorem 2.6: values, reduction, and primary <= simplified") {
  // c -> 0 reduces to the sub-gaussian form exp(-x^2/(2y))
  const auto near_zero = bound_thm26(1.0, 1.0, 1e-12);
  CHECK(near_zero.first.value ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(near_zero.second.value ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  // frozen from direct evaluation: exp(-1/(2 + sqrt(3)))
  const auto unit = bound_thm26(1.0, 1.0, 1.0);
  CHECK(unit.first.value == doctest::Approx(0.76504358247023876).epsilon(1e-12));
  // grid property: primary never exceeds simplified
  for (double x = 0.1; x <= 10.0; x *= 1.7)
    for (double y = 0.1; y <= 10.0; y *= 1.9)
      for (double c = 0.01; c <= 100.0; c *= 3.1) {
        const auto b = bound_thm26(x, y, c);
        CHECK(b.first.value <= b.second.value + 1e-15);
      }
  // random property test on (0, inf)^3
  Rng rng(5150);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(4.0 * (rng.uniform() - 0.5));
    const double y = std::exp(4.0 * (rng.uniform() - 0.5));
    const double c = std::exp(6.0 * (rng.uniform() - 0.5));
    const auto b = bound_thm26(x, y, c);
    CHECK(b.first.value <= b.second.value + 1e-15);
  }
}

TEST_CASE("theorem 2.7 bound and statistic") {
  CHECK(bound_thm27(2.0).value ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-1.0)).epsilon(1e-14));
  CHECK(statistic_thm27(0.0, 3.0, 2.0) == 0.0);
  CHECK(statistic_thm27(-5.0, 3.0, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("theorem 2.8 statistics") {
  const auto zero = statistic_thm28(-2.0, 1.0);
  CHECK(zero.ratio_29 == 0.0);
  CHECK(zero.ratio_210 == 0.0);
  const auto unit_b = statistic_thm28(3.0, 1.0);
  CHECK(unit_b.ratio_29 == doctest::Approx(3.0));
  CHECK(unit_b.ratio_210 == doctest::Approx(3.0));  // log+log factor = 1
  const double big_b = std::exp(std::exp(2.0));
  const auto heavy = statistic_thm28(3.0, big_b);
  CHECK(heavy.ratio_210 ==
        doctest::Approx(heavy.ratio_29 / std::sqrt(2.0)).epsilon(1e-12));
  const auto small_b = statistic_thm28(3.0, 1.0 / big_b);  // B v 1/B guard
  CHECK(small_b.ratio_210 ==
        doctest::Approx(small_b.ratio_29 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("canonical L satisfies its three conditions") {
  CHECK(canonical_l(1.0) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-14));
  const LConditionReport rep = check_l_conditions(canonical_l, canonical_l_log);
  CHECK(rep.scaling_ok);
  CHECK(rep.squaring_ok);
  CHECK(rep.integral == doctest::Approx(0.5).epsilon(2e-8));
  CHECK(rep.integral_ok);
}

TEST_CASE("density f integrates to 1") {
  // both halves reduce to the tail integral by the max(lambda, 1/lambda) symmetry
  const double tail = l_tail_integral_log(canonical_l_log);
  CHECK(2.0 * tail == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(density_f(1.0, canonical_l) ==
        doctest::Approx(1.0 / canonical_l(1.0)).epsilon(1e-14));
  CHECK(density_f(0.25, canonical_l) ==
        doctest::Approx(4.0 / canonical_l(4.0)).epsilon(1e-14));
}

TEST_CASE("(2.12) right-hand constant") {
  CHECK(constant_212_rhs() == doctest::Approx(3.5062459872121808).epsilon(1e-10));
  // denominator integral frozen from quadrature
  CHECK(3.0 / constant_212_rhs() ==
        doctest::Approx(0.85562439189214881).epsilon(1e-12));
}

TEST_CASE("(2.12) statistic guards x < 1") {
  CHECK(lhs_212_statistic(0.5, 1.0, canonical_l) == 0.0);
  const double v = lhs_212_statistic(2.0, 1.0, canonical_l);
  CHECK(v == doctest::Approx(std::exp(2.0) / 2.0 /
                             std::max(canonical_l(2.0), canonical_l(1.0)))
                 .epsilon(1e-12));
}

TEST_CASE("graversen-peskir l and theorem 2.9/2.10 statistics") {
  CHECK(graversen_peskir_l(0.0) == 0.0);
  CHECK(graversen_peskir_l(std::exp(1.0) - 1.0) ==
        doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-12));
  CHECK(phi_q(3.0, 2.0) == doctest::Approx(4.5).epsilon(1e-15));

  const ProcessPath path = path_from_symmetric_increments({1.0, 1.0, -1.0, 1.0});
  const Thm29Statistics s = statistic_thm29(path, 4);
  CHECK(s.sup_ratio == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(s.l_of_qv == doctest::Approx(graversen_peskir_l(4.0)).epsilon(1e-14));

  const double t210 = statistic_thm210(path, 0.5, 2.0, canonical_l);
  CHECK(std::isfinite(t210));
  CHECK(t210 > 0.0);
}

TEST_SUITE_END();
