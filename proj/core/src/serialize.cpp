#include "selfnorm/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

#include "selfnorm/generators.hpp"

namespace selfnorm {

using nlohmann::json;

namespace {

json params_to_json(const FamilyParams& params) {
  json j = json::object();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CondSymParams>) {
          j["base_scale"] = p.base_scale;
        } else if constexpr (std::is_same_v<P, Ar1Params>) {
          j["alpha"] = p.alpha;
          j["noise_scale"] = p.noise_scale;
        } else if constexpr (std::is_same_v<P, BrownianParams>) {
          j["step"] = p.step;
        } else if constexpr (std::is_same_v<P, BoundedAboveParams>) {
          j["m_bound"] = p.m_bound;
          j["lambda0"] = p.lambda0;
          j["p_up"] = p.p_up;
        } else if constexpr (std::is_same_v<P, BernsteinParams>) {
          j["scale"] = p.scale;
          j["lambda_cap"] = p.lambda_cap;
        } else if constexpr (std::is_same_v<P, Example31Params>) {
          j["lambda0"] = p.lambda0;
        } else if constexpr (std::is_same_v<P, TruncatedA8Params>) {
          j["gamma"] = p.gamma;
          j["lambda"] = p.lambda;
          j["scale"] = p.scale;
        }
      },
      params);
  return j;
}

FamilyParams params_from_json(const std::string& family, const json& j) {
  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
  };
  if (family == "rademacher") return RademacherParams{};
  if (family == "conditionally_symmetric") {
    CondSymParams p;
    p.base_scale = get("base_scale", p.base_scale);
    return p;
  }
  if (family == "ar1") {
    Ar1Params p;
    p.alpha = get("alpha", p.alpha);
    p.noise_scale = get("noise_scale", p.noise_scale);
    return p;
  }
  if (family == "brownian") {
    BrownianParams p;
    p.step = get("step", p.step);
    return p;
  }
  if (family == "bounded_above") {
    BoundedAboveParams p;
    p.m_bound = get("m_bound", p.m_bound);
    p.lambda0 = get("lambda0", p.lambda0);
    p.p_up = get("p_up", p.p_up);
    return p;
  }
  if (family == "bernstein") {
    BernsteinParams p;
    p.scale = get("scale", p.scale);
    p.lambda_cap = get("lambda_cap", p.lambda_cap);
    return p;
  }
  if (family == "example31") {
    Example31Params p;
    p.lambda0 = get("lambda0", p.lambda0);
    return p;
  }
  if (family == "truncated_a8") {
    TruncatedA8Params p;
    p.gamma = get("gamma", p.gamma);
    p.lambda = get("lambda", p.lambda);
    p.scale = get("scale", p.scale);
    return p;
  }
  if (family == "stopped_rademacher") return StoppedRademacherParams{};
  throw std::invalid_argument("unknown generator family: " + family);
}

json measure_to_json(const MixingMeasure& f) {
  json j = json::object();
  if (const auto* g = std::get_if<GaussianScaleMeasure>(&f)) {
    j["kind"] = "gaussian";
    j["y"] = g->y;
  } else if (const auto* rs = std::get_if<RobbinsSiegmundMeasure>(&f)) {
    j["kind"] = "robbins_siegmund";
    j["delta"] = rs->delta;
  } else {
    const auto& d = std::get<DiscreteGridMeasure>(f);
    j["kind"] = "discrete";
    j["lambdas"] = d.lambdas;
    j["weights"] = d.weights;
  }
  return j;
}

MixingMeasure measure_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return GaussianScaleMeasure{j.at("y").get<double>()};
  if (kind == "robbins_siegmund")
    return RobbinsSiegmundMeasure{j.at("delta").get<double>()};
  if (kind == "discrete") {
    DiscreteGridMeasure d;
    d.lambdas = j.at("lambdas").get<std::vector<double>>();
    d.weights = j.at("weights").get<std::vector<double>>();
    return d;
  }
  throw std::invalid_argument("unknown mixing measure kind: " + kind);
}

json event_to_json(const EventSpec& e) {
  json j = json::object();
  j["theorem"] = event_name(e);
  std::visit(
      [&](const auto& ev) {
        using E = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<E, Thm21Event>) {
          j["x"] = ev.x;
          j["y"] = ev.y;
          j["two_sided"] = ev.two_sided;
          j["n"] = ev.n;
        } else if constexpr (std::is_same_v<E, Thm22Event>) {
          j["x"] = ev.x;
          j["b"] = ev.b;
          j["s"] = ev.s;
          j["n"] = ev.n;
        } else if constexpr (std::is_same_v<E, Thm23Event>) {
          j["alpha"] = ev.alpha;
          j["beta"] = ev.beta;
          j["lambda"] = ev.lambda;
          j["n"] = ev.n;
        } else if constexpr (std::is_same_v<E, Thm24Event> ||
                             std::is_same_v<E, Thm25Event>) {
          j["x"] = ev.x;
          j["alpha"] = ev.alpha;
          j["beta"] = ev.beta;
          j["y"] = ev.y;
          j["horizon"] = ev.horizon;
        } else if constexpr (std::is_same_v<E, Thm26Event>) {
          j["x"] = ev.x;
          j["y"] = ev.y;
          j["c"] = ev.c;
          j["horizon"] = ev.horizon;
        } else if constexpr (std::is_same_v<E, Thm27Event>) {
          j["x"] = ev.x;
          j["n"] = ev.n;
          if (ev.mean_b > 0.0) j["mean_b"] = ev.mean_b;
        } else {
          j["measure"] = measure_to_json(ev.measure);
          j["c"] = ev.c;
          j["horizon"] = ev.horizon;
        }
      },
      e);
  return j;
}

EventSpec event_from_json(const json& j) {
  const std::string theorem = j.at("theorem").get<std::string>();
  auto num = [&](const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
  };
  auto idx = [&](const char* key, std::uint64_t fallback) {
    return j.contains(key) ? j.at(key).get<std::uint64_t>() : fallback;
  };
  if (theorem == "2.1" || theorem == "2.1-ar1") {
    Thm21Event e;
    e.x = num("x", e.x);
    e.y = num("y", e.y);
    e.n = idx("n", e.n);
    e.two_sided = theorem == "2.1-ar1" ||
                  (j.contains("two_sided") && j.at("two_sided").get<bool>());
    return e;
  }
  if (theorem == "2.2") {
    Thm22Event e;
    e.x = num("x", e.x);
    e.b = num("b", e.b);
    e.s = num("s", e.s);
    e.n = idx("n", e.n);
    return e;
  }
  if (theorem == "2.3") {
    Thm23Event e;
    e.alpha = num("alpha", e.alpha);
    e.beta = num("beta", e.beta);
    e.lambda = num("lambda", e.lambda);
    e.n = idx("n", e.n);
    return e;
  }
  if (theorem == "2.4" || theorem == "2.5") {
    auto fill = [&](auto e) {
      e.x = num("x", e.x);
      e.alpha = num("alpha", e.alpha);
      e.beta = num("beta", e.beta);
      e.y = num("y", e.y);
      e.horizon = idx("horizon", e.horizon);
      return e;
    };
    if (theorem == "2.4") return fill(Thm24Event{});
    return fill(Thm25Event{});
  }
  if (theorem == "2.6") {
    Thm26Event e;
    e.x = num("x", e.x);
    e.y = num("y", e.y);
    e.c = num("c", e.c);
    e.horizon = idx("horizon", e.horizon);
    return e;
  }
  if (theorem == "2.7") {
    Thm27Event e;
    e.x = num("x", e.x);
    e.n = idx("n", e.n);
    e.mean_b = num("mean_b", 0.0);
    return e;
  }
  if (theorem == "2.8") {
    RsCrossingEvent e;
    e.measure = measure_from_json(j.at("measure"));
    e.c = num("c", e.c);
    e.horizon = idx("horizon", e.horizon);
    return e;
  }
  throw std::invalid_argument("unknown event theorem id: " + theorem);
}

}  // namespace

std::string GeneratorSpec::to_json_string() const {
  json j;
  j["family"] = family_name();
  j["params"] = params_to_json(params);
  j["horizon"] = horizon;
  return j.dump();
}

GeneratorSpec GeneratorSpec::from_json_string(const std::string& text) {
  const json j = json::parse(text);
  GeneratorSpec spec;
  spec.params = params_from_json(j.at("family").get<std::string>(),
                                 j.contains("params") ? j.at("params")
                                                      : json::object());
  spec.horizon = j.at("horizon").get<std::uint64_t>();
  spec.validate();
  return spec;
}

std::string measure_to_json_string(const MixingMeasure& f) {
  return measure_to_json(f).dump();
}

MixingMeasure measure_from_json_string(const std::string& text) {
  return measure_from_json(json::parse(text));
}

std::string event_to_json_string(const EventSpec& e) {
  return event_to_json(e).dump();
}

EventSpec event_from_json_string(const std::string& text) {
  return event_from_json(json::parse(text));
}

std::string SimulationConfig::to_json_string() const {
  json j;
  j["generator"] = json::parse(generator.to_json_string());
  j["event"] = event_to_json(event);
  j["replications"] = replications;
  j["master_seed"] = master_seed;
  j["confidence"] = confidence;
  j["jobs"] = jobs;
  j["eb_prepass_replications"] = eb_prepass_replications;
  return j.dump();
}

SimulationConfig SimulationConfig::from_json_string(const std::string& text) {
  const json j = json::parse(text);
  SimulationConfig c;
  c.generator = GeneratorSpec::from_json_string(j.at("generator").dump());
  c.event = event_from_json(j.at("event"));
  if (j.contains("replications"))
    c.replications = j.at("replications").get<std::uint64_t>();
  if (j.contains("master_seed"))
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("confidence")) c.confidence = j.at("confidence").get<double>();
  if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  if (j.contains("eb_prepass_replications"))
    c.eb_prepass_replications = j.at("eb_prepass_replications").get<std::uint64_t>();
  if (!(c.confidence > 0.0 && c.confidence < 1.0))
    throw std::invalid_argument("SimulationConfig: confidence must lie in (0,1)");
  return c;
}

std::string BoundReport::to_json_string() const {
  json j;
  j["theorem"] = theorem;
  j["generator"] = generator;
  j["params"] = params;
  j["analytic_bound"] = analytic_bound;
  j["estimate"] = estimate;
  j["wilson"] = {{"lo", wilson_lo}, {"hi", wilson_hi}, {"half_width", wilson_half_width}};
  j["successes"] = successes;
  j["replications"] = replications;
  j["horizon"] = horizon;
  j["master_seed"] = master_seed;
  j["confidence"] = confidence;
  j["verdict"] = verdict_name(verdict);
  if (dry_run) j["dry_run"] = true;
  if (eb_value > 0.0) {
    j["eb_value"] = eb_value;
    j["eb_se"] = eb_se;
  }
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

std::string MeanCheckReport::to_json_string() const {
  json j;
  j["generator"] = generator;
  j["replications"] = replications;
  j["master_seed"] = master_seed;
  j["all_pass"] = all_pass;
  json cells_json = json::array();
  for (const MeanCheckCell& c : cells) {
    json cj;
    cj["lambda"] = c.lambda;
    cj["checkpoint"] = c.checkpoint;
    cj["mean"] = c.mean;
    cj["se"] = c.se;
    cj["overflow_count"] = c.overflow_count;
    cj["max_share"] = c.max_share;
    cj["heavy_tailed"] = c.heavy_tailed;
    cj["verdict"] = verdict_name(c.verdict);
    cells_json.push_back(cj);
  }
  j["cells"] = cells_json;
  return j.dump();
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace selfnorm
