#include <doctest.h>

#include <cmath>

#include "selfnorm/montecarlo.hpp"
#include "selfnorm/serialize.hpp"

using namespace selfnorm;

TEST_SUITE_BEGIN("montecarlo");

namespace {
SimulationConfig small_config() {
  SimulationConfig c;
  c.generator = GeneratorSpec{RademacherParams{}, 200};
  Thm21Event e;
  e.x = 0.2;
  e.y = 0.05;
  e.n = 200;
  c.event = e;
  c.replications = 5000;
  c.master_seed = 42;
  return c;
}
}  // namespace

TEST_CASE("vacuous bounds are reported, not failed") {
  SimulationConfig c = small_config();
  Thm21Event e;
  e.x = 0.01;  // exp(-x^2/2y) ~ 1
  e.y = 1.0;
  e.n = 50;
  c.event = e;
  c.generator.horizon = 50;
  const BoundReport r = estimate_event_probability(c);
  CHECK(r.verdict == Verdict::kVacuous);
  CHECK(r.analytic_bound >= 1.0);
}

TEST_CASE("zero-replication dry run echoes the config") {
  SimulationConfig c = small_config();
  c.replications = 0;
  const BoundReport r = estimate_event_probability(c);
  CHECK(r.dry_run);
  CHECK(r.verdict == Verdict::kInconclusive);
  CHECK(r.note.find("dry run") != std::string::npos);
}

TEST_CASE("determinism: identical config gives bit-identical reports") {
  const BoundReport r1 = estimate_event_probability(small_config());
  const BoundReport r2 = estimate_event_probability(small_config());
  CHECK(r1.to_json_string() == r2.to_json_string());
}

TEST_CASE("parallel and serial runs agree exactly") {
  SimulationConfig c = small_config();
  c.replications = 6000;
  c.jobs = 1;
  const BoundReport serial = estimate_event_probability(c);
  c.jobs = 4;
  const BoundReport parallel = estimate_event_probability(c);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.successes == parallel.successes);
}

TEST_CASE("seed independence: estimates agree within joint intervals") {
  SimulationConfig c = small_config();
  c.replications = 20000;
  std::vector<BoundReport> reports;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
    c.master_seed = seed;
    reports.push_back(estimate_event_probability(c));
  }
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const double gap = std::abs(reports[i].estimate - reports[j].estimate);
      CHECK(gap <= reports[i].wilson_half_width + reports[j].wilson_half_width);
    }
}

TEST_CASE("regime mismatch errors name theorem and regime") {
  SimulationConfig c = small_config();
  c.generator = GeneratorSpec{BoundedAboveParams{}, 200};  // restricted regime
  CHECK_THROWS_WITH_AS((void)estimate_event_probability(c),
                       doctest::Contains("theorem 2.1"),
                       std::invalid_argument);
  // thm 2.5 needs conditionally symmetric increments
  SimulationConfig c2 = small_config();
  c2.generator = GeneratorSpec{Ar1Params{}, 200};
  Thm25Event e25;
  e25.horizon = 200;
  c2.event = e25;
  CHECK_THROWS_WITH_AS((void)estimate_event_probability(c2),
                       doctest::Contains("conditionally symmetric"),
                       std::invalid_argument);
}

TEST_CASE("ar1 corollary event certifies against 2 exp(-x^2 z / 2)") {
  SimulationConfig c;
  c.generator = GeneratorSpec{Ar1Params{0.5, 1.0}, 200};
  Thm21Event e;
  e.x = 0.15;
  e.y = 1.0 / 100.0;  // z = 100
  e.n = 200;
  e.two_sided = true;
  c.event = e;
  c.replications = 20000;
  c.master_seed = 2718;
  const BoundReport r = estimate_event_probability(c);
  CHECK(r.theorem == "2.1-ar1");
  CHECK(r.analytic_bound ==
        doctest::Approx(2.0 * std::exp(-0.5 * 0.15 * 0.15 * 100.0)).epsilon(1e-12));
  CHECK(r.verdict == Verdict::kPass);
}

TEST_CASE("grid runs share paths and stay individually exact") {
  GeneratorSpec gen{RademacherParams{}, 500};
  std::vector<EventSpec> events;
  for (double x : {0.6, 0.8, 1.0, 1.2}) {
    Thm25Event e;
    e.x = x;
    e.alpha = 1.0;
    e.beta = 0.02;
    e.y = 0.01;
    e.horizon = 500;
    events.push_back(e);
  }
  const auto reports = estimate_event_grid(gen, events, 20000, 7, 0.9973, 1);
  REQUIRE(reports.size() == 4);
  double prev = 2.0;
  for (const BoundReport& r : reports) {
    CHECK(r.verdict == Verdict::kPass);
    CHECK(r.estimate <= prev + 1e-12);  // crossing sets shrink as x grows
    prev = r.estimate;
  }
  // mixing event kinds in one grid is rejected
  std::vector<EventSpec> mixed = events;
  mixed.push_back(Thm21Event{});
  CHECK_THROWS_AS(
      (void)estimate_event_grid(gen, mixed, 100, 7, 0.9973, 1),
      std::invalid_argument);
}

TEST_CASE("thm 2.7 resolves EB exactly for deterministic-B families") {
  SimulationConfig c;
  c.generator = GeneratorSpec{RademacherParams{}, 400};
  Thm27Event e;
  e.x = 2.0;
  e.n = 400;
  c.event = e;
  c.replications = 20000;
  c.master_seed = 1234;
  const BoundReport r = estimate_event_probability(c);
  CHECK(r.eb_value == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.eb_se == 0.0);
  CHECK(r.verdict == Verdict::kPass);
}

TEST_CASE("rs crossing event certifies against mass/c") {
  SimulationConfig c;
  c.generator = GeneratorSpec{RademacherParams{}, 2000};
  RsCrossingEvent e;
  e.measure = RobbinsSiegmundMeasure{0.5};
  e.c = 10.0;
  e.horizon = 2000;
  c.event = e;
  c.replications = 5000;
  c.master_seed = 31415;
  const BoundReport r = estimate_event_probability(c);
  CHECK(r.analytic_bound == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.verdict == Verdict::kPass);
  // crossing boundaries need a deterministic normalizer sequence
  SimulationConfig bad = c;
  bad.generator = GeneratorSpec{Ar1Params{}, 2000};
  CHECK_THROWS_WITH_AS((void)estimate_event_probability(bad),
                       doctest::Contains("deterministic"),
                       std::invalid_argument);
}

TEST_CASE("mean verification: lambda 0 cell is exact, small campaign passes") {
  GeneratorSpec gen{RademacherParams{}, 1000};
  const std::vector<double> lambdas{0.0, 0.05, -0.05};
  const std::vector<std::uint64_t> checkpoints{10, 100, 1000};
  const MeanCheckReport rep =
      verify_supermartingale_mean(gen, lambdas, checkpoints, 5000, 8);
  CHECK(rep.cells.size() == 9);
  for (const MeanCheckCell& cell : rep.cells) {
    if (cell.lambda == 0.0) {
      CHECK(cell.mean == 1.0);
      CHECK(cell.se == 0.0);
    }
    CHECK(cell.verdict == Verdict::kPass);
  }
  CHECK(rep.all_pass);
}

TEST_CASE("mean verification rejects lambdas outside the regime") {
  GeneratorSpec gen{BernsteinParams{1.0, 0.5}, 100};
  const std::vector<double> lambdas{0.7};
  const std::vector<std::uint64_t> checkpoints{100};
  CHECK_THROWS_WITH_AS(
      (void)verify_supermartingale_mean(gen, lambdas, checkpoints, 100, 1),
      doctest::Contains("outside the canonical regime"), std::invalid_argument);
}

TEST_CASE("heavy-tail flag fires on spiky samples and gates the verdict") {
  std::vector<double> samples(1000, 1e-6);
  samples[500] = 1.0;
  const HeavyTailDiagnostic d = heavy_tail_flagging(samples);
  CHECK(d.flagged);
  CHECK(d.max_share > 0.99);
  const HeavyTailDiagnostic tame =
      heavy_tail_flagging(std::vector<double>(1000, 0.5));
  CHECK(!tame.flagged);

  // rademacher at lambda sqrt(n) ~ 9 has wildly skewed summands
  GeneratorSpec gen{RademacherParams{}, 900};
  const std::vector<double> lambdas{0.3};
  const std::vector<std::uint64_t> checkpoints{900};
  const MeanCheckReport rep =
      verify_supermartingale_mean(gen, lambdas, checkpoints, 4000, 99);
  CHECK(rep.cells[0].heavy_tailed);
  CHECK(rep.cells[0].verdict == Verdict::kInconclusive);
}

TEST_CASE("simulation config json round-trip preserves the hash") {
  SimulationConfig c = small_config();
  const std::string json = c.to_json_string();
  const SimulationConfig back = SimulationConfig::from_json_string(json);
  CHECK(back.to_json_string() == json);
  CHECK(fnv1a_hash(back.to_json_string()) == fnv1a_hash(json));
}

TEST_SUITE_END();
