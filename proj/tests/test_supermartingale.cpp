#include <doctest.h>

#include <cmath>

#include "selfnorm/generators.hpp"
#include "selfnorm/stats.hpp"
#include "selfnorm/supermartingale.hpp"

using namespace selfnorm;

namespace {

// Hand-built path for value checks: A_n, B_n^2, V_n^2 set directly.
ProcessPath synthetic_path(std::vector<double> a, std::vector<double> b2,
                           std::vector<double> cond_var,
                           CanonicalRegime regime) {
  ProcessPath p;
  const std::size_t n = a.size() - 1;
  p.spec = GeneratorSpec{CondSymParams{}, n};
  p.regime = regime;
  p.a_values = std::move(a);
  p.cond_var = std::move(cond_var);
  p.b_values.resize(n + 1);
  p.times.resize(n + 1);
  p.increments.assign(n, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    p.b_values[i] = std::sqrt(b2[i]);
    p.times[i] = static_cast<double>(i);
  }
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("supermartingale");

TEST_CASE("value at lambda = 0 is 1 for any path") {
  const ProcessPath path = generate_path({RademacherParams{}, 20}, 11);
  const SupermartingaleValue v = exp_supermartingale_value(path, 0.0, 20);
  CHECK(v.value == 1.0);
  CHECK(!v.overflow);
}

TEST_CASE("direct evaluation: A=2, B^2=4, lambda=0.5") {
  const ProcessPath path = synthetic_path({0.0, 2.0}, {0.0, 4.0}, {0.0, 4.0},
                                          CanonicalRegime::all_real());
  const SupermartingaleValue v = exp_supermartingale_value(path, 0.5, 1);
  CHECK(v.value == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
}

TEST_CASE("lambda outside the regime names the regime") {
  const ProcessPath path =
      generate_path({BoundedAboveParams{1.0, 0.5, 1.0 / 3.0}, 10}, 2);
  CHECK_THROWS_WITH_AS((void)exp_supermartingale_value(path, 0.75, 5),
                       doctest::Contains("0 <= lambda <= 0.5"),
                       std::invalid_argument);
  CHECK_THROWS_AS((void)exp_supermartingale_value(path, 0.1, 11),
                  std::invalid_argument);
}

TEST_CASE("overflow is flagged, not clamped") {
  const ProcessPath path = synthetic_path({0.0, 2000.0}, {0.0, 1.0},
                                          {0.0, 1.0}, CanonicalRegime::all_real());
  const SupermartingaleValue v = exp_supermartingale_value(path, 1.0, 1);
  CHECK(v.overflow);
  CHECK(v.log_value == doctest::Approx(1999.5));
  CHECK(std::isinf(v.value));
}

TEST_CASE("monte carlo mean of the canonical value stays <= 1 + 3 SE") {
  const std::size_t reps = 20000;
  const std::uint64_t n = 100;
  std::vector<double> values(reps);
  GeneratorSpec spec{RademacherParams{}, n};
  for (std::size_t r = 0; r < reps; ++r) {
    const ProcessPath path = generate_path(spec, 2024, r);
    values[r] = exp_supermartingale_value(path, 0.3, n).value;
  }
  const MeanSe ms = mean_and_se(values);
  CHECK(ms.mean <= 1.0 + 3.0 * ms.se);
  CHECK(ms.mean > 0.0);
}

TEST_CASE("stout normalizer: rademacher with m = 1") {
  const ProcessPath path = generate_path({RademacherParams{}, 4}, 9);
  const std::vector<double> b2 = stout_b_squared(path, 1.0, 1.0);
  CHECK(b2[4] == doctest::Approx(6.0).epsilon(1e-14));  // (1 + 1/2) * 4
  const std::vector<double> b2_small = stout_b_squared(path, 1e-9, 1.0);
  CHECK(b2_small[4] == doctest::Approx(4.0).epsilon(1e-6));  // plain variance
  CHECK_THROWS_WITH_AS((void)stout_b_squared(path, 1.5, 1.0),
                       doctest::Contains("lambda0 <= 1/m_bound"),
                       std::invalid_argument);
}

TEST_CASE("stout-normalized rademacher value keeps mean <= 1 at lambda0/2") {
  const std::size_t reps = 20000;
  const std::uint64_t n = 50;
  const double lambda0 = 1.0;
  std::vector<double> values(reps);
  GeneratorSpec spec{RademacherParams{}, n};
  for (std::size_t r = 0; r < reps; ++r) {
    const ProcessPath path = generate_path(spec, 31, r);
    const std::vector<double> b2 = stout_b_squared(path, lambda0, 1.0);
    const double lam = lambda0 / 2.0;
    values[r] = std::exp(lam * path.a_values[n] - 0.5 * lam * lam * b2[n]);
  }
  const MeanSe ms = mean_and_se(values);
  CHECK(ms.mean <= 1.0 + 3.0 * ms.se);
}

TEST_CASE("bernstein value: fixed points and the regime error") {
  const ProcessPath path = synthetic_path({0.0, 1.0}, {0.0, 4.0}, {0.0, 2.0},
                                          CanonicalRegime::restricted(0.99));
  CHECK(bernstein_supermartingale_value(path, 0.0, 1.0, 1).value == 1.0);
  // exp(0.5 - 0.25 * 2 / (2 * 0.5)) = exp(0)
  CHECK(bernstein_supermartingale_value(path, 0.5, 1.0, 1).value ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(
      (void)bernstein_supermartingale_value(path, 1.0, 1.0, 1),
      doctest::Contains("Bernstein regime violated"), std::invalid_argument);
}

TEST_CASE("bernstein laplace generator keeps mean <= 1 near the regime edge") {
  const std::size_t reps = 20000;
  const std::uint64_t n = 200;
  std::vector<double> values(reps);
  GeneratorSpec spec{BernsteinParams{1.0, 0.5}, n};
  for (std::size_t r = 0; r < reps; ++r) {
    const ProcessPath path = generate_path(spec, 8, r);
    values[r] = bernstein_supermartingale_value(path, 0.4, 1.0, n).value;
  }
  const MeanSe ms = mean_and_se(values);
  CHECK(ms.mean <= 1.0 + 3.0 * ms.se);
}

TEST_CASE("lemma A.7 normalizer and C_gamma edge handling") {
  const ProcessPath path = path_from_symmetric_increments({1.0, -1.0, 1.0});
  const std::vector<double> b2 = lemma_a7_b_squared(path, 0.5, 1.0);
  CHECK(b2[3] == doctest::Approx(2.0 * 0.7725887222397812 * 3.0).epsilon(1e-12));
  // gamma = 0 handled by the limit C_0 = 1/2
  const std::vector<double> b2_zero = lemma_a7_b_squared(path, 0.0, 1.0);
  CHECK(b2_zero[3] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)lemma_a7_b_squared(path, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS((void)lemma_a7_b_squared(path, 0.5, 0.5),
                       doctest::Contains("below -m_bound"),
                       std::invalid_argument);
}

TEST_CASE("lemma A.8 value: zero sequence, range checks, MC mean") {
  const std::vector<double> zeros(10, 0.0);
  // y == 0 has mu = 0 only when the window mean vanishes; use caller-side mu
  const std::vector<double> gammas(10, 0.3), lambdas(10, 1.0), mus(10, 0.0);
  const SupermartingaleValue v = lemma_a8_value(zeros, gammas, lambdas, mus);
  CHECK(v.value == 1.0);

  const std::vector<double> bad_lambda(10, 2.5);
  CHECK_THROWS_WITH_AS((void)lemma_a8_value(zeros, gammas, bad_lambda, mus),
                       doctest::Contains("1/C_{gamma_n}"),
                       std::invalid_argument);

  const std::size_t reps = 20000;
  const std::uint64_t n = 100;
  std::vector<double> values(reps);
  GeneratorSpec spec{TruncatedA8Params{0.3, 1.0, 0.5}, n};
  for (std::size_t r = 0; r < reps; ++r) {
    const ProcessPath path = generate_path(spec, 6, r);
    // the A8 path accumulates the supermartingale exponent directly
    values[r] = std::exp(path.a_values[n]);
  }
  const MeanSe ms = mean_and_se(values);
  CHECK(ms.mean <= 1.0 + 3.0 * ms.se);
}

TEST_CASE("supermartingale-in-n: empirical means do not grow across checkpoints") {
  const std::size_t reps = 20000;
  GeneratorSpec spec{BoundedAboveParams{1.0, 0.5, 1.0 / 3.0}, 400};
  std::vector<double> at100(reps), at400(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const ProcessPath path = generate_path(spec, 17, r);
    at100[r] = exp_supermartingale_value(path, 0.25, 100).value;
    at400[r] = exp_supermartingale_value(path, 0.25, 400).value;
  }
  const MeanSe m100 = mean_and_se(at100);
  const MeanSe m400 = mean_and_se(at400);
  CHECK(m400.mean <= m100.mean + 3.0 * std::sqrt(m100.se * m100.se +
                                                 m400.se * m400.se));
}

TEST_SUITE_END();
