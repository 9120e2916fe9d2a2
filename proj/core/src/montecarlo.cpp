#include "selfnorm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "selfnorm/generators.hpp"
#include "selfnorm/special.hpp"
#include "selfnorm/stats.hpp"
#include "selfnorm/supermartingale.hpp"
#include "selfnorm/tail_bounds.hpp"

namespace selfnorm {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Fixed block decomposition; workers write to disjoint replication slots, so
// the result is identical for any job count.
void run_replications(std::uint64_t reps, int jobs,
                      const std::function<void(std::uint64_t)>& body) {
  if (jobs <= 1 || reps < 2048) {
    for (std::uint64_t r = 0; r < reps; ++r) body(r);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kBlock = 256;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t start = next.fetch_add(kBlock);
      if (start >= reps) return;
      const std::uint64_t end = std::min(reps, start + kBlock);
      for (std::uint64_t r = start; r < end; ++r) body(r);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency())));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::string event_name(const EventSpec& event) {
  struct V {
    std::string operator()(const Thm21Event& e) const {
      return e.two_sided ? "2.1-ar1" : "2.1";
    }
    std::string operator()(const Thm22Event&) const { return "2.2"; }
    std::string operator()(const Thm23Event&) const { return "2.3"; }
    std::string operator()(const Thm24Event&) const { return "2.4"; }
    std::string operator()(const Thm25Event&) const { return "2.5"; }
    std::string operator()(const Thm26Event&) const { return "2.6"; }
    std::string operator()(const Thm27Event&) const { return "2.7"; }
    std::string operator()(const RsCrossingEvent&) const { return "2.8"; }
  };
  return std::visit(V{}, event);
}

namespace {
std::string kv(const char* k, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%.17g", k, v);
  return buf;
}
std::string kv(const char* k, std::uint64_t v) {
  return std::string(k) + "=" + std::to_string(v);
}
}  // namespace

std::string event_params_echo(const EventSpec& event) {
  struct V {
    std::string operator()(const Thm21Event& e) const {
      return kv("x", e.x) + "," + kv("y", e.y) + "," + kv("n", e.n) +
             (e.two_sided ? ",two_sided" : "");
    }
    std::string operator()(const Thm22Event& e) const {
      return kv("x", e.x) + "," + kv("b", e.b) + "," + kv("s", e.s) + "," +
             kv("n", e.n);
    }
    std::string operator()(const Thm23Event& e) const {
      return kv("alpha", e.alpha) + "," + kv("beta", e.beta) + "," +
             kv("lambda", e.lambda) + "," + kv("n", e.n);
    }
    std::string operator()(const Thm24Event& e) const {
      return kv("x", e.x) + "," + kv("alpha", e.alpha) + "," +
             kv("beta", e.beta) + "," + kv("y", e.y) + "," +
             kv("horizon", e.horizon);
    }
    std::string operator()(const Thm25Event& e) const {
      return kv("x", e.x) + "," + kv("alpha", e.alpha) + "," +
             kv("beta", e.beta) + "," + kv("y", e.y) + "," +
             kv("horizon", e.horizon);
    }
    std::string operator()(const Thm26Event& e) const {
      return kv("x", e.x) + "," + kv("y", e.y) + "," + kv("c", e.c) + "," +
             kv("horizon", e.horizon);
    }
    std::string operator()(const Thm27Event& e) const {
      return kv("x", e.x) + "," + kv("n", e.n);
    }
    std::string operator()(const RsCrossingEvent& e) const {
      return kv("c", e.c) + "," + kv("horizon", e.horizon);
    }
  };
  return std::visit(V{}, event);
}

double event_analytic_bound(const EventSpec& event) {
  struct V {
    double operator()(const Thm21Event& e) const {
      return e.two_sided ? bound_thm21_ar1(e.x, 1.0 / e.y).value
                         : bound_thm21(e.x, e.y).value;
    }
    double operator()(const Thm22Event& e) const {
      return bound_thm22(e.x, e.s).value;
    }
    double operator()(const Thm23Event& e) const {
      return bound_thm23(e.alpha, e.beta, e.lambda).value;
    }
    double operator()(const Thm24Event& e) const {
      return bound_thm24_25(e.x, e.alpha, e.beta, e.y).value;
    }
    double operator()(const Thm25Event& e) const {
      return bound_thm24_25(e.x, e.alpha, e.beta, e.y).value;
    }
    double operator()(const Thm26Event& e) const {
      return bound_thm26(e.x, e.y, e.c).first.value;
    }
    double operator()(const Thm27Event& e) const {
      return bound_thm27(e.x).value;
    }
    double operator()(const RsCrossingEvent& e) const {
      return crossing_bound(e.c, e.measure);
    }
  };
  return std::visit(V{}, event);
}

std::optional<std::vector<double>> deterministic_b2(const GeneratorSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.horizon);
  std::vector<double> out(n + 1, 0.0);
  if (std::holds_alternative<RademacherParams>(spec.params)) {
    for (std::size_t i = 0; i <= n; ++i) out[i] = static_cast<double>(i);
    return out;
  }
  if (const auto* p = std::get_if<BrownianParams>(&spec.params)) {
    for (std::size_t i = 0; i <= n; ++i) out[i] = static_cast<double>(i) * p->step;
    return out;
  }
  if (const auto* p = std::get_if<BoundedAboveParams>(&spec.params)) {
    const double sigma2 = p->m_bound * p->m_bound * p->p_up / (1.0 - p->p_up);
    const double factor = 1.0 + 0.5 * p->lambda0 * p->m_bound;
    for (std::size_t i = 0; i <= n; ++i)
      out[i] = factor * sigma2 * static_cast<double>(i);
    return out;
  }
  if (const auto* p = std::get_if<BernsteinParams>(&spec.params)) {
    const double sigma2 = 2.0 * p->scale * p->scale;
    const double inflation = 1.0 / (1.0 - p->scale * p->lambda_cap);
    for (std::size_t i = 0; i <= n; ++i)
      out[i] = inflation * sigma2 * static_cast<double>(i);
    return out;
  }
  if (const auto* p = std::get_if<Example31Params>(&spec.params)) {
    const double factor = 1.0 + 0.5 * p->lambda0 * example31::kMBound;
    double cv = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const auto law = example31::law_at(i);
      if (!law.degenerate) cv += law.var;
      out[i] = factor * cv;
    }
    return out;
  }
  if (std::holds_alternative<TruncatedA8Params>(spec.params)) {
    return out;  // B identically zero
  }
  return std::nullopt;
}

void check_event_compatibility(const EventSpec& event,
                               const GeneratorSpec& gen) {
  const std::string family = gen.family_name();
  const CanonicalRegime regime = gen.regime();
  const std::string theorem = event_name(event);
  const bool all_real = regime.kind == CanonicalRegime::Kind::kAllReal;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("theorem " + theorem + " incompatible with " +
                                family + " (" + regime.describe() + "): " + why);
  };

  if (std::holds_alternative<Thm21Event>(event) ||
      std::holds_alternative<Thm22Event>(event) ||
      std::holds_alternative<Thm27Event>(event)) {
    if (!all_real) fail("requires the canonical assumption for all real lambda");
    return;
  }
  if (std::holds_alternative<Thm23Event>(event) ||
      std::holds_alternative<Thm24Event>(event)) {
    if (family != "brownian") fail("requires a continuous-martingale generator");
    return;
  }
  if (std::holds_alternative<Thm25Event>(event)) {
    if (family != "rademacher" && family != "conditionally_symmetric" &&
        family != "stopped_rademacher")
      fail("requires conditionally symmetric increments");
    return;
  }
  if (const auto* e = std::get_if<Thm26Event>(&event)) {
    if (const auto* p = std::get_if<BernsteinParams>(&gen.params)) {
      if (e->c < p->scale)
        fail("Bernstein constant c must be >= the generator's moment scale");
    } else if (std::holds_alternative<RademacherParams>(gen.params)) {
      if (e->c < 1.0) fail("Rademacher increments satisfy |d| <= 1, so c >= 1");
    } else {
      fail("requires a generator with the Bernstein moment condition");
    }
    return;
  }
  const auto& rs = std::get<RsCrossingEvent>(event);
  validate_measure(rs.measure);
  const auto b2 = deterministic_b2(gen);
  if (!b2)
    fail("crossing boundaries are precomputed per n, which needs a "
         "deterministic B^2 sequence");
  if ((*b2)[gen.horizon] <= 0.0) fail("B^2 is identically zero");
  if (!all_real) {
    const double top = support_lambda0(rs.measure);
    if (!(regime.kind == CanonicalRegime::Kind::kRestricted &&
          top <= regime.lambda0))
      fail("mixing support exceeds the canonical regime");
  }
}

namespace {

double resolve_mean_b(const GeneratorSpec& gen, std::uint64_t n,
                      std::uint64_t master_seed, std::uint64_t prepass_reps,
                      int jobs, double* se_out) {
  if (const auto b2 = deterministic_b2(gen)) {
    *se_out = 0.0;
    return std::sqrt((*b2)[n]);
  }
  // Pre-pass estimate of E B_n on a seed space disjoint from the event scan.
  const std::uint64_t eb_seed = master_seed ^ 0xEBEB5EEDCAFEF00DULL;
  std::vector<double> values(prepass_reps);
  run_replications(prepass_reps, jobs, [&](std::uint64_t rep) {
    SourceVariant source = make_source(gen, Rng::substream(eb_seed, rep));
    std::visit(
        [&](auto& src) {
          Step s{};
          for (std::uint64_t i = 0; i < n; ++i) s = src.next();
          values[rep] = std::sqrt(s.b2);
        },
        source);
  });
  const MeanSe ms = mean_and_se(values);
  *se_out = ms.se;
  return ms.mean;
}

struct PreparedEvents {
  std::uint64_t scan_steps = 0;
  // Thm 2.7 resolved EB per event
  std::vector<double> eb_values;
  std::vector<double> eb_ses;
  // RS crossing boundaries per event, indexed by n
  std::vector<std::vector<double>> boundaries;
};

PreparedEvents prepare(const GeneratorSpec& gen,
                       std::span<const EventSpec> events,
                       std::uint64_t master_seed,
                       std::uint64_t eb_prepass_reps, int jobs) {
  PreparedEvents prep;
  for (const EventSpec& ev : events) {
    check_event_compatibility(ev, gen);
    std::visit(
        [&](const auto& e) {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, Thm21Event> ||
                        std::is_same_v<E, Thm22Event> ||
                        std::is_same_v<E, Thm23Event> ||
                        std::is_same_v<E, Thm27Event>) {
            prep.scan_steps = std::max(prep.scan_steps, e.n);
          } else {
            prep.scan_steps = std::max(prep.scan_steps, e.horizon);
          }
        },
        ev);
  }
  require(prep.scan_steps >= 1, "event horizon must be >= 1");
  require(prep.scan_steps <= gen.horizon,
          "event horizon exceeds the generator horizon");

  for (const EventSpec& ev : events) {
    if (const auto* e = std::get_if<Thm27Event>(&ev)) {
      double se = 0.0;
      double eb = e->mean_b;
      if (eb <= 0.0)
        eb = resolve_mean_b(gen, e->n, master_seed, eb_prepass_reps, jobs, &se);
      prep.eb_values.push_back(eb);
      prep.eb_ses.push_back(se);
    }
    if (const auto* e = std::get_if<RsCrossingEvent>(&ev)) {
      const auto b2 = deterministic_b2(gen);
      std::vector<double> v_grid(b2->begin() + 1,
                                 b2->begin() + 1 + static_cast<std::ptrdiff_t>(
                                                       e->horizon));
      // B^2 can sit at zero while a family warms up; the boundary only
      // matters from the first positive normalizer on.
      std::size_t first_pos = 0;
      while (first_pos < v_grid.size() && v_grid[first_pos] <= 0.0) ++first_pos;
      std::vector<double> beta(v_grid.size(),
                               std::numeric_limits<double>::infinity());
      if (first_pos < v_grid.size()) {
        const std::vector<double> tail_grid(v_grid.begin() +
                                                static_cast<std::ptrdiff_t>(first_pos),
                                            v_grid.end());
        const std::vector<double> roots =
            beta_f_on_grid(tail_grid, e->c, e->measure);
        std::copy(roots.begin(), roots.end(),
                  beta.begin() + static_cast<std::ptrdiff_t>(first_pos));
      }
      prep.boundaries.push_back(std::move(beta));
    }
  }
  return prep;
}

}  // namespace

std::vector<BoundReport> estimate_event_grid(const GeneratorSpec& generator,
                                             std::span<const EventSpec> events,
                                             std::uint64_t replications,
                                             std::uint64_t master_seed,
                                             double confidence, int jobs) {
  require(!events.empty(), "estimate_event_grid: no events");
  generator.validate();
  const std::size_t kind = events.front().index();
  for (const EventSpec& e : events)
    require(e.index() == kind,
            "estimate_event_grid: events must share one theorem kind");
  const std::size_t n_events = events.size();

  std::vector<BoundReport> reports(n_events);
  for (std::size_t j = 0; j < n_events; ++j) {
    BoundReport& r = reports[j];
    r.theorem = event_name(events[j]);
    r.generator = generator.family_name();
    r.params = event_params_echo(events[j]);
    r.analytic_bound = event_analytic_bound(events[j]);
    r.replications = replications;
    r.master_seed = master_seed;
    r.confidence = confidence;
    r.horizon = generator.horizon;
    if (replications < kMinCertificationReps)
      r.note = "below minimum certification replications";
  }

  if (replications == 0) {
    for (auto& r : reports) {
      r.dry_run = true;
      r.verdict = Verdict::kInconclusive;
      r.note = "dry run: config echo only";
    }
    return reports;
  }

  PreparedEvents prep = prepare(generator, events, master_seed,
                                SimulationConfig{}.eb_prepass_replications, jobs);
  for (std::size_t j = 0; j < prep.eb_values.size(); ++j) {
    reports[j].eb_value = prep.eb_values[j];
    reports[j].eb_se = prep.eb_ses[j];
  }

  std::vector<std::uint8_t> hits(n_events * replications, 0);
  const std::uint64_t steps = prep.scan_steps;

  auto scan_rep = [&](std::uint64_t rep) {
    SourceVariant source =
        make_source(generator, Rng::substream(master_seed, rep));
    std::visit(
        [&](auto& src) {
          std::visit(
              [&](const auto& first) {
                using E = std::decay_t<decltype(first)>;
                // typed view of the homogeneous grid
                auto ev = [&](std::size_t j) -> const E& {
                  return std::get<E>(events[j]);
                };
                if constexpr (std::is_same_v<E, Thm21Event>) {
                  Step s{};
                  for (std::uint64_t i = 1; i <= steps; ++i) {
                    s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      const auto& e = ev(j);
                      if (e.n != i) continue;
                      const double lhs = e.two_sided ? std::abs(s.a) : s.a;
                      if (s.b2 > 0.0 && lhs > e.x * s.b2 &&
                          1.0 <= e.y * s.b2)
                        hits[j * replications + rep] = 1;
                    }
                  }
                } else if constexpr (std::is_same_v<E, Thm22Event>) {
                  Step s{};
                  for (std::uint64_t i = 1; i <= steps; ++i) {
                    s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      const auto& e = ev(j);
                      if (e.n != i) continue;
                      const double bmag = std::sqrt(s.b2);
                      if (std::abs(s.a) > e.x * bmag && e.b <= bmag &&
                          bmag <= e.b * e.s)
                        hits[j * replications + rep] = 1;
                    }
                  }
                } else if constexpr (std::is_same_v<E, Thm23Event>) {
                  Step s{};
                  for (std::uint64_t i = 1; i <= steps; ++i) {
                    s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      const auto& e = ev(j);
                      if (e.n == i &&
                          s.a >= (e.alpha + e.beta * s.b2) * e.lambda)
                        hits[j * replications + rep] = 1;
                    }
                  }
                } else if constexpr (std::is_same_v<E, Thm27Event>) {
                  Step s{};
                  for (std::uint64_t i = 1; i <= steps; ++i) {
                    s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      const auto& e = ev(j);
                      if (e.n != i) continue;
                      const double eb = prep.eb_values[j];
                      if (std::abs(s.a) > e.x * std::sqrt(s.b2 + eb * eb))
                        hits[j * replications + rep] = 1;
                    }
                  }
                } else if constexpr (std::is_same_v<E, Thm24Event> ||
                                     std::is_same_v<E, Thm25Event>) {
                  std::uint64_t remaining = n_events;
                  for (std::uint64_t i = 1; i <= steps && remaining > 0; ++i) {
                    const Step s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      auto& hit = hits[j * replications + rep];
                      const auto& e = ev(j);
                      if (hit || i > e.horizon) continue;
                      if (s.b2 * e.y >= 1.0 &&
                          s.a >= (e.alpha + e.beta * s.b2) * e.x) {
                        hit = 1;
                        --remaining;
                      }
                    }
                  }
                } else if constexpr (std::is_same_v<E, Thm26Event>) {
                  std::uint64_t remaining = n_events;
                  for (std::uint64_t i = 1; i <= steps && remaining > 0; ++i) {
                    const Step s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      auto& hit = hits[j * replications + rep];
                      const auto& e = ev(j);
                      if (hit || i > e.horizon) continue;
                      if (s.cv * e.y >= 1.0 && s.a >= e.x * s.cv) {
                        hit = 1;
                        --remaining;
                      }
                    }
                  }
                } else {
                  static_assert(std::is_same_v<E, RsCrossingEvent>);
                  std::uint64_t remaining = n_events;
                  for (std::uint64_t i = 1; i <= steps && remaining > 0; ++i) {
                    const Step s = src.next();
                    for (std::size_t j = 0; j < n_events; ++j) {
                      auto& hit = hits[j * replications + rep];
                      if (hit || i > ev(j).horizon) continue;
                      if (s.a >= prep.boundaries[j][i - 1]) {
                        hit = 1;
                        --remaining;
                      }
                    }
                  }
                }
              },
              events.front());
        },
        source);
  };
  run_replications(replications, jobs, scan_rep);

  const double z = normal_quantile(0.5 * (1.0 + confidence));
  for (std::size_t j = 0; j < n_events; ++j) {
    std::uint64_t count = 0;
    for (std::uint64_t r = 0; r < replications; ++r)
      count += hits[j * replications + r];
    BoundReport& rep = reports[j];
    rep.successes = count;
    const WilsonInterval w = wilson_interval(count, replications, z);
    rep.estimate = w.estimate;
    rep.wilson_lo = w.lo;
    rep.wilson_hi = w.hi;
    rep.wilson_half_width = w.half_width;
    if (rep.analytic_bound >= 1.0) {
      rep.verdict = Verdict::kVacuous;
    } else if (rep.estimate <= rep.analytic_bound + w.half_width) {
      rep.verdict = Verdict::kPass;
    } else {
      rep.verdict = Verdict::kFail;
    }
  }
  return reports;
}

BoundReport estimate_event_probability(const SimulationConfig& config) {
  const EventSpec events[] = {config.event};
  auto reports =
      estimate_event_grid(config.generator, events, config.replications,
                          config.master_seed, config.confidence, config.jobs);
  return reports.front();
}

MeanCheckReport verify_supermartingale_mean(
    const GeneratorSpec& generator, std::span<const double> lambdas,
    std::span<const std::uint64_t> checkpoints, std::uint64_t replications,
    std::uint64_t master_seed, int jobs) {
  generator.validate();
  require(!lambdas.empty() && !checkpoints.empty(),
          "verify_supermartingale_mean: empty grid");
  require(replications >= 2, "verify_supermartingale_mean: needs replications");
  const CanonicalRegime regime = generator.regime();
  for (double l : lambdas)
    if (!regime.contains(l))
      throw std::invalid_argument(
          "lambda " + std::to_string(l) + " outside the canonical regime (" +
          regime.describe() + ") of " + generator.family_name());
  std::vector<std::uint64_t> cps(checkpoints.begin(), checkpoints.end());
  for (std::size_t i = 1; i < cps.size(); ++i)
    require(cps[i] > cps[i - 1], "checkpoints must be strictly increasing");
  require(cps.back() <= generator.horizon,
          "checkpoint exceeds the generator horizon");

  const std::size_t n_l = lambdas.size();
  const std::size_t n_c = cps.size();
  const std::size_t n_cells = n_l * n_c;
  std::vector<double> values(n_cells * replications);

  run_replications(replications, jobs, [&](std::uint64_t rep) {
    SourceVariant source =
        make_source(generator, Rng::substream(master_seed, rep));
    std::visit(
        [&](auto& src) {
          std::size_t next_cp = 0;
          Step s{};
          for (std::uint64_t i = 1; i <= cps.back(); ++i) {
            s = src.next();
            if (i == cps[next_cp]) {
              for (std::size_t li = 0; li < n_l; ++li) {
                const double lam = lambdas[li];
                const double logv = lam * s.a - 0.5 * lam * lam * s.b2;
                values[(li * n_c + next_cp) * replications + rep] =
                    std::exp(logv);
              }
              ++next_cp;
            }
          }
        },
        source);
  });

  MeanCheckReport report;
  report.generator = generator.family_name();
  report.replications = replications;
  report.master_seed = master_seed;
  report.all_pass = true;
  for (std::size_t li = 0; li < n_l; ++li) {
    for (std::size_t ci = 0; ci < n_c; ++ci) {
      MeanCheckCell cell;
      cell.lambda = lambdas[li];
      cell.checkpoint = cps[ci];
      const std::span<const double> cell_values(
          values.data() + (li * n_c + ci) * replications, replications);
      const MeanSe ms = mean_and_se(cell_values);
      cell.mean = ms.mean;
      cell.se = ms.se;
      const double overflow_at = std::exp(kDefaultLogCap);
      for (double v : cell_values)
        if (!std::isfinite(v) || v > overflow_at) ++cell.overflow_count;
      const HeavyTailDiagnostic ht = heavy_tail_flagging(cell_values);
      cell.max_share = ht.max_share;
      cell.heavy_tailed = ht.flagged;
      if (cell.overflow_count > 0) {
        cell.verdict = Verdict::kInconclusive;
      } else if (cell.heavy_tailed &&
                 replications < 10 * kMinCertificationReps) {
        cell.verdict = Verdict::kInconclusive;
      } else {
        cell.verdict = cell.mean <= 1.0 + 3.0 * cell.se ? Verdict::kPass
                                                        : Verdict::kFail;
      }
      if (cell.verdict != Verdict::kPass) report.all_pass = false;
      report.cells.push_back(cell);
    }
  }
  return report;
}

HeavyTailDiagnostic heavy_tail_flagging(std::span<const double> samples) {
  HeavyTailDiagnostic d;
  double sum = 0.0;
  double max_v = 0.0;
  for (double v : samples) {
    if (v > 0.0) {
      sum += v;
      max_v = std::max(max_v, v);
    }
  }
  if (sum > 0.0) d.max_share = max_v / sum;
  d.flagged = d.max_share > 0.1;
  return d;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kVacuous: return "VACUOUS";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

}  // namespace selfnorm
