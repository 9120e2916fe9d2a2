#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "selfnorm/mixtures.hpp"
#include "selfnorm/process.hpp"

namespace selfnorm {

// ---- Events ----------------------------------------------------------------
// Fixed-time events evaluate the pair at step n; any-time events scan every
// step up to the horizon (reported estimates are lower bounds of the
// infinite-horizon probability, which still must sit below the bound).

struct Thm21Event {  // {A/B^2 > x, 1/B^2 <= y} at time n
  double x = 1.0, y = 1.0;
  bool two_sided = false;  // AR(1) corollary form, bound doubled
  std::uint64_t n = 100;
};
struct Thm22Event {  // {|A|/B > x, b <= B <= b s} at time n
  double x = 1.0, b = 1.0, s = 2.0;
  std::uint64_t n = 100;
};
struct Thm23Event {  // {A >= (alpha + beta B^2) lambda} at time n (Brownian)
  double alpha = 1.0, beta = 1.0, lambda = 1.0;
  std::uint64_t n = 100;
};
struct Thm24Event {  // {A >= (alpha + beta B^2) x, 1/B^2 <= y for some t}
  double x = 1.0, alpha = 0.0, beta = 1.0, y = 1.0;
  std::uint64_t horizon = 10000;
};
struct Thm25Event {  // discrete conditionally-symmetric version of Thm24
  double x = 1.0, alpha = 0.0, beta = 1.0, y = 1.0;
  std::uint64_t horizon = 10000;
};
struct Thm26Event {  // {A/V^2 >= x, 1/V^2 <= y for some n}, V^2 = sum sigma_i^2
  double x = 1.0, y = 1.0, c = 1.0;
  std::uint64_t horizon = 10000;
};
struct Thm27Event {  // {|A|/sqrt(B^2 + (EB)^2) > x} at time n
  double x = 2.0;
  std::uint64_t n = 400;
  // 0 = resolve automatically: exact for deterministic-B families, else a
  // seeded pre-pass estimate whose SE is recorded in the report.
  double mean_b = 0.0;
};
struct RsCrossingEvent {  // {A_n >= beta_F(B_n^2, c) for some n <= horizon}
  MixingMeasure measure = RobbinsSiegmundMeasure{0.5};
  double c = 10.0;
  std::uint64_t horizon = 10000;
};

using EventSpec =
    std::variant<Thm21Event, Thm22Event, Thm23Event, Thm24Event, Thm25Event,
                 Thm26Event, Thm27Event, RsCrossingEvent>;

std::string event_name(const EventSpec& event);
std::string event_params_echo(const EventSpec& event);
// Analytic bound for the event (tail_bounds / mixtures formulas).
double event_analytic_bound(const EventSpec& event);
// Throws std::invalid_argument naming theorem and regime when the generator
// cannot certify this event.
void check_event_compatibility(const EventSpec& event, const GeneratorSpec& gen);

// ---- Reports ---------------------------------------------------------------

enum class Verdict { kPass, kFail, kVacuous, kInconclusive };
std::string verdict_name(Verdict v);

struct BoundReport {
  std::string theorem;
  std::string generator;
  std::string params;
  double analytic_bound = 0.0;
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double wilson_half_width = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t replications = 0;
  std::uint64_t horizon = 0;
  std::uint64_t master_seed = 0;
  double confidence = 0.9973;
  Verdict verdict = Verdict::kInconclusive;
  bool dry_run = false;
  double eb_value = 0.0;  // Thm 2.7 only
  double eb_se = 0.0;
  std::string note;

  std::string to_json_string() const;
};

struct SimulationConfig {
  GeneratorSpec generator;
  EventSpec event;
  std::uint64_t replications = 100000;
  std::uint64_t master_seed = 1;
  double confidence = 0.9973;
  int jobs = 1;
  std::uint64_t eb_prepass_replications = 1000000;

  std::string to_json_string() const;
  static SimulationConfig from_json_string(const std::string& json);
};

// Certification runs below this replication count carry a warning note.
inline constexpr std::uint64_t kMinCertificationReps = 1000;

BoundReport estimate_event_probability(const SimulationConfig& config);

// Same-kind parameter grid sharing one pass of path generation; the reports
// are statistically coupled across grid points but individually exact.
std::vector<BoundReport> estimate_event_grid(const GeneratorSpec& generator,
                                             std::span<const EventSpec> events,
                                             std::uint64_t replications,
                                             std::uint64_t master_seed,
                                             double confidence, int jobs = 1);

// ---- Supermartingale mean verification -------------------------------------

struct MeanCheckCell {
  double lambda = 0.0;
  std::uint64_t checkpoint = 0;
  double mean = 0.0;
  double se = 0.0;
  std::uint64_t overflow_count = 0;
  double max_share = 0.0;  // largest single-replication share of the sum
  bool heavy_tailed = false;
  Verdict verdict = Verdict::kInconclusive;
};

struct MeanCheckReport {
  std::string generator;
  std::uint64_t replications = 0;
  std::uint64_t master_seed = 0;
  std::vector<MeanCheckCell> cells;
  bool all_pass = false;

  std::string to_json_string() const;
};

// Sample mean and SE of exp(lambda A_n - lambda^2 B_n^2/2) per (lambda,
// checkpoint); PASS iff mean <= 1 + 3 SE. Heavy-tailed cells (one replication
// contributing > 10% of the sum) are INCONCLUSIVE unless the run already used
// >= 10x the minimum certification replications.
MeanCheckReport verify_supermartingale_mean(
    const GeneratorSpec& generator, std::span<const double> lambdas,
    std::span<const std::uint64_t> checkpoints, std::uint64_t replications,
    std::uint64_t master_seed, int jobs = 1);

struct HeavyTailDiagnostic {
  double max_share = 0.0;
  bool flagged = false;  // max_share > 0.1
};
HeavyTailDiagnostic heavy_tail_flagging(std::span<const double> samples);

// B_n^2 as a deterministic sequence (index 0..horizon) for families whose
// normalizer does not depend on the draws; nullopt otherwise.
std::optional<std::vector<double>> deterministic_b2(const GeneratorSpec& spec);

}  // namespace selfnorm
