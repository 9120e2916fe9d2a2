#include <benchmark/benchmark.h>

#include <cmath>

#include "selfnorm/generators.hpp"
#include "selfnorm/mixtures.hpp"
#include "selfnorm/multivariate.hpp"
#include "selfnorm/quadrature.hpp"
#include "selfnorm/rng.hpp"

using namespace selfnorm;

static void BM_RademacherSteps(benchmark::State& state) {
  RademacherSource src(RademacherParams{}, Rng(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(src.next());
  }
}
BENCHMARK(BM_RademacherSteps);

static void BM_NormalDraw(benchmark::State& state) {
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.normal());
  }
}
BENCHMARK(BM_NormalDraw);

static void BM_GaussQuadrature(benchmark::State& state) {
  QuadOptions opts;
  opts.rel_tol = 1e-11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate([](double x) { return std::exp(-0.5 * x * x); }, -8.0, 8.0,
                  opts)
            .value);
  }
}
BENCHMARK(BM_GaussQuadrature);

static void BM_PsiRobbinsSiegmund(benchmark::State& state) {
  const MixingMeasure rs = RobbinsSiegmundMeasure{0.5};
  double u = 50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_log(u, 1000.0, rs));
  }
}
BENCHMARK(BM_PsiRobbinsSiegmund);

static void BM_BetaRoot(benchmark::State& state) {
  const MixingMeasure rs = RobbinsSiegmundMeasure{0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_f(1e6, 10.0, rs));
  }
}
BENCHMARK(BM_BetaRoot);

static void BM_MvRankOneStep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  MvCrossingConfig config;
  config.k = k;
  config.a = 1e9;  // never crosses; measures pure update cost
  config.horizon = 64;
  config.replications = 1;
  config.recheck_every = 0;
  const SymMatrix v = SymMatrix::identity(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mv_crossing_probability(config, v));
  }
}
BENCHMARK(BM_MvRankOneStep)->Arg(2)->Arg(5);

BENCHMARK_MAIN();
