#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selfnorm/common.hpp"
#include "selfnorm/generators.hpp"
#include "selfnorm/lil.hpp"
#include "selfnorm/mixtures.hpp"
#include "selfnorm/montecarlo.hpp"
#include "selfnorm/multivariate.hpp"
#include "selfnorm/serialize.hpp"
#include "selfnorm/special.hpp"
#include "selfnorm/supermartingale.hpp"
#include "selfnorm/tail_bounds.hpp"

namespace selfnorm_cli {

using nlohmann::json;
using namespace selfnorm;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("SELFNORM_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::strtoull(env, nullptr, 10);
}

void write_manifest(const std::string& out_path, const std::string& config_json,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    bool seed_overridden) {
  json m;
  m["tool_version"] = kVersion;
  m["config_hash"] = fnv1a_hash(config_json);
  m["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  m["seed_overridden_by_env"] = seed_overridden;
  std::ofstream out(out_path);
  out << m.dump(2) << "\n";
}

// "x=1,y=2.5" -> kv map
std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--params", "expected k=v, got: " + item);
    out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return out;
}

double need(const std::map<std::string, double>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw CLI::ValidationError("--params", "missing parameter " + key);
  return it->second;
}

// "lo:hi:lin|log:count" or a single value
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {std::stod(parts[0])};
  if (parts.size() != 4)
    throw CLI::ValidationError("range", "expected lo:hi:lin|log:count");
  const double lo = std::stod(parts[0]);
  const double hi = std::stod(parts[1]);
  const bool logspace = parts[2] == "log";
  const int count = std::stoi(parts[3]);
  if (count < 1) throw CLI::ValidationError("range", "count must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(logspace ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  return out;
}

// "rs:delta=0.5" | "gaussian:y=1.5" | "atom:lambda=0.05,mass=1"
MixingMeasure parse_measure(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) kv = parse_params(text.substr(colon + 1));
  if (kind == "rs") return RobbinsSiegmundMeasure{need(kv, "delta")};
  if (kind == "gaussian") return GaussianScaleMeasure{need(kv, "y")};
  if (kind == "atom")
    return DiscreteGridMeasure{{need(kv, "lambda")}, {need(kv, "mass")}};
  throw CLI::ValidationError("--measure", "unknown kind: " + kind);
}

struct OutSink {
  std::string path;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) file.open(path);
    return file;
  }
  std::ofstream file;
};

BoundValue eval_theorem(const std::string& theorem,
                        const std::map<std::string, double>& p) {
  if (theorem == "2.1") return bound_thm21(need(p, "x"), need(p, "y"));
  if (theorem == "2.1-ar1") return bound_thm21_ar1(need(p, "x"), need(p, "z"));
  if (theorem == "2.2") return bound_thm22(need(p, "x"), need(p, "s"));
  if (theorem == "2.3")
    return bound_thm23(need(p, "alpha"), need(p, "beta"), need(p, "lambda"));
  if (theorem == "2.4" || theorem == "2.5")
    return bound_thm24_25(need(p, "x"), need(p, "alpha"), need(p, "beta"),
                          need(p, "y"));
  if (theorem == "2.6")
    return bound_thm26(need(p, "x"), need(p, "y"), need(p, "c")).first;
  if (theorem == "2.6-simplified")
    return bound_thm26(need(p, "x"), need(p, "y"), need(p, "c")).second;
  if (theorem == "2.7") return bound_thm27(need(p, "x"));
  throw CLI::ValidationError("--theorem", "unknown theorem id: " + theorem);
}

int cmd_bounds(const std::string& theorem, const std::string& params,
               const std::string& grid, OutSink& out) {
  if (grid.empty()) {
    const BoundValue b = eval_theorem(theorem, parse_params(params));
    json j;
    j["value"] = b.value;
    j["saturated"] = b.saturated;
    out.stream() << j.dump() << "\n";
    return 0;
  }
  // grid mode: "x=0.5:3:lin:6,y=1" -> CSV with param columns + value
  std::map<std::string, std::vector<double>> axes;
  std::vector<std::string> names;
  {
    std::stringstream ss(grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--grid", "expected k=range, got: " + item);
      const std::string name = item.substr(0, eq);
      axes[name] = parse_range(item.substr(eq + 1));
      names.push_back(name);
    }
  }
  std::ostream& os = out.stream();
  for (const std::string& n : names) os << n << ",";
  os << "value,saturated\n";
  std::vector<std::size_t> idx(names.size(), 0);
  for (;;) {
    std::map<std::string, double> point;
    for (std::size_t i = 0; i < names.size(); ++i)
      point[names[i]] = axes[names[i]][idx[i]];
    const BoundValue b = eval_theorem(theorem, point);
    for (const std::string& n : names) os << fmt17(point[n]) << ",";
    os << fmt17(b.value) << "," << (b.saturated ? 1 : 0) << "\n";
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < axes[names[k]].size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return 0;
}

int cmd_boundary(const std::string& measure_text, double c,
                 const std::string& v_grid_text, OutSink& out) {
  const MixingMeasure measure = parse_measure(measure_text);
  const std::vector<double> v_grid = parse_range(v_grid_text);
  const std::vector<double> betas = beta_f_on_grid(v_grid, c, measure);
  std::ostream& os = out.stream();
  os << "v,beta_exact,beta_asymptotic,psi_residual\n";
  const auto* rs = std::get_if<RobbinsSiegmundMeasure>(&measure);
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    const double residual =
        std::abs(psi(betas[i], v_grid[i], measure) - c) / c;
    std::string asym = "";
    if (rs != nullptr) {
      try {
        asym = fmt17(rs_asymptotic(v_grid[i], c, rs->delta));
      } catch (const std::invalid_argument&) {
        asym = "";  // outside the asymptotic domain
      }
    }
    os << fmt17(v_grid[i]) << "," << fmt17(betas[i]) << "," << asym << ","
       << fmt17(residual) << "\n";
  }
  std::cerr << "boundary: " << v_grid.size() << " points, measure "
            << measure_to_json_string(measure) << ", c = " << c << "\n";
  return 0;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kPass:
    case Verdict::kVacuous:
      return 0;
    case Verdict::kFail:
      return 1;
    case Verdict::kInconclusive:
      return 0;  // dry runs and gated cells are not failures
  }
  return 3;
}

int cmd_simulate(const std::string& config_path, int jobs, bool dump_config,
                 const std::string& out_path, const std::string& export_path) {
  SimulationConfig config =
      SimulationConfig::from_json_string(read_file(config_path));
  if (jobs > 0) config.jobs = jobs;
  bool seed_overridden = false;
  if (const auto seed = env_seed_override()) {
    config.master_seed = *seed;
    seed_overridden = true;
  }
  if (dump_config) {
    std::cout << config.to_json_string() << "\n";
    return 0;
  }
  if (!export_path.empty()) {
    const ProcessPath path = generate_path(config.generator, config.master_seed);
    std::ofstream out(export_path);
    out << path.to_csv();
  }
  const BoundReport report = estimate_event_probability(config);
  json line = json::parse(report.to_json_string());
  line["config_hash"] = fnv1a_hash(config.to_json_string());
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::app);
    out << line.dump() << "\n";
    std::vector<std::string> outputs{out_path};
    if (!export_path.empty()) outputs.push_back(export_path);
    write_manifest(out_path + ".manifest.json", config.to_json_string(),
                   {config_path}, outputs, seed_overridden);
  }
  std::cout << line.dump() << "\n";
  std::cerr << "theorem " << report.theorem << " [" << report.params
            << "]: estimate " << report.estimate << " vs bound "
            << report.analytic_bound << " -> " << verdict_name(report.verdict)
            << "\n";
  return verdict_exit(report.verdict);
}

int cmd_lil_constants(double lambda) {
  const LilConstants c = solve_h(lambda);
  json j;
  j["lambda"] = c.lambda;
  j["h"] = c.h;
  j["b_lambda"] = c.b_lambda;
  j["gamma"] = c.gamma;
  j["c_gamma"] = c.c_gamma_value;
  j["c_lambda"] = c.c_lambda;
  j["c_lambda_note"] = LilConstants::kCLambdaNote;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_lil_ratios(const std::string& spec_path, double horizon,
                   const std::string& seeds_text, double lambda,
                   int per_decade, OutSink& out) {
  GeneratorSpec spec = GeneratorSpec::from_json_string(read_file(spec_path));
  spec.horizon = static_cast<std::uint64_t>(horizon);
  const LilConstants constants = solve_h(lambda);
  // "0..99" or "3,7,11"
  std::vector<std::uint64_t> seeds;
  const auto dots = seeds_text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(seeds_text.substr(0, dots));
    const std::uint64_t hi = std::stoull(seeds_text.substr(dots + 2));
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  } else {
    std::stringstream ss(seeds_text);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(std::stoull(item));
  }
  const auto grid = log_spaced_indices(10, spec.horizon, per_decade);
  std::ostream& os = out.stream();
  os << "seed,n,ratio,stout_ratio,centered_ratio\n";
  auto cell = [&](const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string();
  };
  for (const std::uint64_t seed : seeds) {
    const ProcessPath path = generate_path(spec, seed);
    const LilRatios r = lil_ratios(path, constants, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << seed << "," << grid[i] << "," << cell(r.lil[i]) << ","
         << cell(r.stout[i]) << "," << cell(r.centered[i]) << "\n";
    }
  }
  return 0;
}

int cmd_mv_certify(int k, double a, const std::string& v_text,
                   const std::string& spec_path, double horizon, double reps,
                   std::uint64_t seed, OutSink& out) {
  if (!spec_path.empty()) {
    const GeneratorSpec spec =
        GeneratorSpec::from_json_string(read_file(spec_path));
    if (spec.family_name() != "rademacher")
      throw CLI::ValidationError(
          "--spec", "mv certify draws conditionally symmetric +/-1 "
                    "coordinates; only the rademacher family is supported");
  }
  if (v_text != "identity")
    throw CLI::ValidationError("--V", "only 'identity' is supported");
  MvCrossingConfig config;
  config.k = k;
  config.a = a;
  config.horizon = static_cast<std::uint64_t>(horizon);
  config.replications = static_cast<std::uint64_t>(reps);
  config.master_seed = seed;
  if (const auto env = env_seed_override()) config.master_seed = *env;
  const MvCrossingReport r = mv_crossing_probability(config, SymMatrix::identity(k));
  json j;
  j["k"] = k;
  j["a"] = a;
  j["bound"] = r.bound;
  j["estimate"] = r.estimate;
  j["wilson"] = {{"lo", r.wilson_lo}, {"hi", r.wilson_hi},
                 {"half_width", r.wilson_half_width}};
  j["crossings"] = r.crossings;
  j["replications"] = r.replications;
  j["horizon"] = config.horizon;
  j["master_seed"] = config.master_seed;
  j["verdict"] = r.pass ? "PASS" : "FAIL";
  out.stream() << j.dump() << "\n";
  std::cerr << "mv certify k=" << k << " a=" << a << ": estimate "
            << r.estimate << " vs 1/a = " << r.bound << " -> "
            << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? 0 : 1;
}

int cmd_mv_equality(double a, double v, double dt, double total_time,
                    double reps, std::uint64_t seed, OutSink& out) {
  BrownianEqualityConfig config;
  config.a = a;
  config.v = v;
  config.dt = dt;
  config.total_time = total_time;
  config.replications = static_cast<std::uint64_t>(reps);
  config.master_seed = seed;
  const BrownianEqualityReport coarse = brownian_equality_estimate(config);
  config.dt = dt / 2.0;
  const BrownianEqualityReport fine = brownian_equality_estimate(config);
  json j;
  j["a"] = a;
  j["dt"] = dt;
  j["estimate_dt"] = coarse.estimate;
  j["estimate_half_dt"] = fine.estimate;
  j["gap_dt"] = coarse.gap;
  j["gap_half_dt"] = fine.gap;
  j["se"] = fine.se;
  j["gap_shrink_factor"] =
      std::abs(fine.gap) > 0.0 ? std::abs(coarse.gap) / std::abs(fine.gap) : 0.0;
  out.stream() << j.dump() << "\n";
  return 0;
}

int cmd_verify(const std::string& spec_path, const std::string& lambdas_text,
               const std::string& checkpoints_text, double reps,
               std::uint64_t seed, int jobs, OutSink& out) {
  const GeneratorSpec spec = GeneratorSpec::from_json_string(read_file(spec_path));
  std::vector<double> lambdas;
  {
    std::stringstream ss(lambdas_text);
    std::string item;
    while (std::getline(ss, item, ',')) lambdas.push_back(std::stod(item));
  }
  std::vector<std::uint64_t> checkpoints;
  {
    std::stringstream ss(checkpoints_text);
    std::string item;
    while (std::getline(ss, item, ',')) checkpoints.push_back(std::stoull(item));
  }
  std::uint64_t master_seed = seed;
  if (const auto env = env_seed_override()) master_seed = *env;
  const MeanCheckReport report = verify_supermartingale_mean(
      spec, lambdas, checkpoints, static_cast<std::uint64_t>(reps), master_seed,
      jobs);
  out.stream() << report.to_json_string() << "\n";
  std::cerr << "verify " << report.generator << ": "
            << (report.all_pass ? "PASS" : "FAIL") << " over "
            << report.cells.size() << " cells\n";
  return report.all_pass ? 0 : 1;
}

int cmd_selftest() {
  // the trivial-tier example table; exact evaluations only
  struct Row {
    const char* label;
    double got;
    double want;
    double tol;
  };
  const auto thm26 = bound_thm26(1.0, 1.0, 1e-12);
  const Row rows[] = {
      {"thm21(1,1)", bound_thm21(1.0, 1.0).value, std::exp(-0.5), 1e-12},
      {"thm22(1,1)", bound_thm22(1.0, 1.0).value, 4.0, 1e-12},
      {"thm23(1,1,1)", bound_thm23(1.0, 1.0, 1.0).value, std::exp(-2.0), 1e-12},
      {"thm24_25(1,0,1,1)", bound_thm24_25(1.0, 0.0, 1.0, 1.0).value,
       std::exp(-0.5), 1e-12},
      {"thm26(c->0)", thm26.first.value, std::exp(-0.5), 1e-9},
      {"thm27(2)", bound_thm27(2.0).value, std::sqrt(2.0) * std::exp(-1.0),
       1e-12},
      {"c_gamma(0)", c_gamma(0.0), 0.5, 1e-12},
      {"e_3", e_k(3), 15.342472440, 1e-6},
      {"psi(atom)", psi(2.0, 4.0, DiscreteGridMeasure{{0.5}, {1.0}}),
       std::exp(0.5), 1e-12},
      {"crossing_bound", crossing_bound(20.0, DiscreteGridMeasure{{0.1}, {1.0}}),
       0.05, 1e-12},
  };
  bool ok = true;
  for (const Row& row : rows) {
    const bool pass = std::abs(row.got - row.want) <=
                      row.tol * (1.0 + std::abs(row.want));
    ok = ok && pass;
    std::cerr << (pass ? "[ok] " : "[FAIL] ") << row.label << " = " << row.got
              << "\n";
  }
  std::cout << (ok ? "{\"selftest\":\"pass\"}" : "{\"selftest\":\"fail\"}")
            << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"self-normalized process bounds: evaluators, boundaries, and "
               "Monte Carlo certification"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write machine output to this file");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form bound evaluators");
  bounds->require_subcommand(1);
  auto* bounds_eval = bounds->add_subcommand("eval", "evaluate one bound");
  std::string theorem, params_text, grid_text;
  bounds_eval->add_option("--theorem", theorem, "theorem id, e.g. 2.1")
      ->required();
  bounds_eval->add_option("--params", params_text, "k=v,... parameters");
  bounds_eval->add_option("--grid", grid_text,
                          "k=lo:hi:lin|log:count,... for CSV sweeps");

  // boundary
  auto* boundary = app.add_subcommand("boundary", "mixture boundary beta_F");
  std::string measure_text = "rs:delta=0.5";
  double boundary_c = 10.0;
  std::string v_grid_text = "1e3:1e9:log:25";
  boundary->add_option("--measure", measure_text,
                       "rs:delta=..., gaussian:y=..., atom:lambda=...,mass=...");
  boundary->add_option("--c", boundary_c, "crossing level c > 0");
  boundary->add_option("--v-grid", v_grid_text, "lo:hi:lin|log:count");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run one certification config");
  std::string config_path, export_path;
  int jobs = 0;
  bool dump_config = false;
  simulate->add_option("--config", config_path, "SimulationConfig JSON file")
      ->required();
  simulate->add_option("--jobs", jobs, "worker threads");
  simulate->add_flag("--dump-config", dump_config,
                     "print the canonical config and exit");
  simulate->add_option("--export-path", export_path,
                       "write the first replication's path as CSV");

  // lil
  auto* lil = app.add_subcommand("lil", "law-of-the-iterated-logarithm tools");
  lil->require_subcommand(1);
  auto* lil_constants = lil->add_subcommand("constants", "constant bundle");
  double lil_lambda = 0.5;
  lil_constants->add_option("--lambda", lil_lambda, "lambda > 0")->required();
  auto* lil_ratios_cmd = lil->add_subcommand("ratios", "per-path ratio CSV");
  std::string lil_spec, lil_seeds = "0..9";
  double lil_horizon = 1e6;
  double lil_ratio_lambda = 0.5;
  int per_decade = 10;
  lil_ratios_cmd->add_option("--spec", lil_spec, "GeneratorSpec JSON file")
      ->required();
  lil_ratios_cmd->add_option("--horizon", lil_horizon, "path horizon");
  lil_ratios_cmd->add_option("--seeds", lil_seeds, "lo..hi or comma list");
  lil_ratios_cmd->add_option("--lambda", lil_ratio_lambda,
                             "lambda for the centered ratio constants");
  lil_ratios_cmd->add_option("--grid-per-decade", per_decade,
                             "output rows per decade of n");

  // mv
  auto* mv = app.add_subcommand("mv", "multivariate determinant boundaries");
  mv->require_subcommand(1);
  auto* mv_certify = mv->add_subcommand("certify", "crossing bound 1/a");
  int mv_k = 2;
  double mv_a = 2.0, mv_horizon = 1e4, mv_reps = 1e5;
  std::uint64_t mv_seed = 7;
  std::string mv_v = "identity", mv_spec;
  mv_certify->add_option("--k", mv_k, "dimension");
  mv_certify->add_option("--a", mv_a, "level a > 1");
  mv_certify->add_option("--V", mv_v, "prior matrix (identity)");
  mv_certify->add_option("--spec", mv_spec, "coordinate generator JSON");
  mv_certify->add_option("--horizon", mv_horizon, "steps per replication");
  mv_certify->add_option("--reps", mv_reps, "replications");
  mv_certify->add_option("--seed", mv_seed, "master seed");
  auto* mv_equality = mv->add_subcommand(
      "equality", "continuous-time equality diagnostic (k = 1)");
  double eq_a = 2.0, eq_v = 1.0, eq_dt = 2.0, eq_T = 1e5, eq_reps = 1e5;
  std::uint64_t eq_seed = 7;
  mv_equality->add_option("--a", eq_a, "level a > 1");
  mv_equality->add_option("--v", eq_v, "scalar prior V");
  mv_equality->add_option("--dt", eq_dt, "base Brownian step (also run at dt/2)");
  mv_equality->add_option("--total-time", eq_T, "time horizon");
  mv_equality->add_option("--reps", eq_reps, "replications");
  mv_equality->add_option("--seed", eq_seed, "master seed");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "supermartingale mean <= 1 verification for a generator");
  std::string verify_spec, lambdas_text = "0.05,0.1", checkpoints_text = "10,100,1000";
  double verify_reps = 1e5;
  std::uint64_t verify_seed = 1;
  int verify_jobs = 1;
  verify->add_option("--spec", verify_spec, "GeneratorSpec JSON file")
      ->required();
  verify->add_option("--lambdas", lambdas_text, "comma list");
  verify->add_option("--checkpoints", checkpoints_text, "comma list");
  verify->add_option("--reps", verify_reps, "replications");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--jobs", verify_jobs, "worker threads");

  auto* selftest = app.add_subcommand("selftest", "fast exact-value checks");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  OutSink sink;
  sink.path = out_path;
  try {
    if (bounds_eval->parsed())
      return cmd_bounds(theorem, params_text, grid_text, sink);
    if (boundary->parsed())
      return cmd_boundary(measure_text, boundary_c, v_grid_text, sink);
    if (simulate->parsed())
      return cmd_simulate(config_path, jobs, dump_config, out_path, export_path);
    if (lil_constants->parsed()) return cmd_lil_constants(lil_lambda);
    if (lil_ratios_cmd->parsed())
      return cmd_lil_ratios(lil_spec, lil_horizon, lil_seeds, lil_ratio_lambda,
                            per_decade, sink);
    if (mv_certify->parsed())
      return cmd_mv_certify(mv_k, mv_a, mv_v, mv_spec, mv_horizon, mv_reps,
                            mv_seed, sink);
    if (mv_equality->parsed())
      return cmd_mv_equality(eq_a, eq_v, eq_dt, eq_T, eq_reps, eq_seed, sink);
    if (verify->parsed())
      return cmd_verify(verify_spec, lambdas_text, checkpoints_text,
                        verify_reps, verify_seed, verify_jobs, sink);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace selfnorm_cli
