#include "strongrate/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "strongrate/error.hpp"

namespace strongrate {

namespace {

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k) v.push_back(1 << k);
  return v;
}

RunConfig defaults_for(std::string_view verb) {
  RunConfig c;
  c.verb = std::string(verb);
  if (verb == "rate") {
    c.n_list = powers_of_two(4, 10);
    c.fine_steps = 1 << 14;
    c.reps = 1000;
  } else if (verb == "couple") {
    c.n_list = powers_of_two(3, 8);
    c.fine_steps = 1 << 14;
    c.reps = 1000;
  } else if (verb == "kappa") {
    c.fine_steps = 1 << 12;
    c.reps = 100000;
  } else if (verb == "occupation") {
    c.fine_steps = 1 << 16;
    c.reps = 10000;
    for (int k = 7; k >= 3; --k) c.deltas.push_back(std::ldexp(1.0, -k));
  } else if (verb == "transform-check") {
    c.n_list = powers_of_two(10, 12);
    c.fine_steps = 1 << 12;
    c.reps = 1000;
  } else if (verb == "sobolev") {
    c.reps = 100;
  }
  return c;
}

template <class T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void check_n_list(const std::vector<int>& v) {
  if (v.empty()) throw ConfigError("n_list must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) throw ConfigError("n_list entries must be positive");
    if (i > 0 && v[i] <= v[i - 1]) throw ConfigError("n_list must be strictly increasing");
  }
}

}  // namespace

bool is_verb(std::string_view verb) {
  return std::find(std::begin(kVerbs), std::end(kVerbs), verb) != std::end(kVerbs);
}

DriftKind RunConfig::drift_kind() const {
  DriftKind k = parse_drift_kind(drift, s);
  if (auto* mu = std::get_if<drift_kind::MuS>(&k)) {
    mu->params.quad.panels = quad_panels;
    mu->params.quad.abs_tol = quad_abs_tol;
    mu->cache.x_max = cache_x_max;
    mu->cache.tol = cache_tol;
  }
  return k;
}

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig e;
  e.drift = drift_kind();
  e.x0 = x0;
  e.n_list = n_list;
  e.fine_steps = fine_steps;
  e.reps = reps;
  e.seed = seed;
  e.p = p;
  e.workers = workers;
  return e;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["verb"] = verb;
  j["drift"] = drift;
  j["s"] = s;
  j["x0"] = x0;
  j["p"] = p;
  j["n_list"] = n_list;
  j["fine_steps"] = fine_steps;
  j["reps"] = reps;
  j["seed"] = seed;
  if (verb == "kappa") j["z"] = z;
  if (verb == "occupation") {
    j["xi"] = xi;
    j["deltas"] = deltas;
  }
  if (verb == "sobolev") {
    j["order"] = order;
    j["mesh"] = mesh;
    j["doublings"] = doublings;
    j["domain"] = domain;
  }
  j["quad_panels"] = quad_panels;
  j["quad_abs_tol"] = quad_abs_tol;
  j["cache_x_max"] = cache_x_max;
  j["cache_tol"] = cache_tol;
  return j;
}

RunConfig resolve_config(std::string_view verb, const nlohmann::json& overrides_in) {
  if (!is_verb(verb)) throw ConfigError("unknown verb '" + std::string(verb) + "'");
  const nlohmann::json& overrides =
      overrides_in.is_object() && overrides_in.contains("config") ? overrides_in.at("config") : overrides_in;
  if (!overrides.is_null() && !overrides.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c = defaults_for(verb);
  bool order_given = false;
  if (overrides.is_object()) {
    for (const auto& [key, val] : overrides.items()) {
      const char* k = key.c_str();
      if (key == "verb") {
        if (get_as<std::string>(val, k) != verb) throw ConfigError("config verb does not match the command");
      } else if (key == "drift") c.drift = get_as<std::string>(val, k);
      else if (key == "s") c.s = get_as<double>(val, k);
      else if (key == "x0") c.x0 = get_as<double>(val, k);
      else if (key == "p") c.p = get_as<double>(val, k);
      else if (key == "n_list") c.n_list = get_as<std::vector<int>>(val, k);
      else if (key == "fine_steps") c.fine_steps = get_as<int>(val, k);
      else if (key == "reps") c.reps = get_as<int>(val, k);
      else if (key == "seed") c.seed = get_as<std::uint64_t>(val, k);
      else if (key == "z") c.z = get_as<double>(val, k);
      else if (key == "xi") c.xi = get_as<double>(val, k);
      else if (key == "deltas") c.deltas = get_as<std::vector<double>>(val, k);
      else if (key == "order") {
        c.order = get_as<double>(val, k);
        order_given = true;
      } else if (key == "mesh") c.mesh = get_as<int>(val, k);
      else if (key == "doublings") c.doublings = get_as<int>(val, k);
      else if (key == "domain") c.domain = get_as<double>(val, k);
      else if (key == "quad_panels") c.quad_panels = get_as<int>(val, k);
      else if (key == "quad_abs_tol") c.quad_abs_tol = get_as<double>(val, k);
      else if (key == "cache_x_max") c.cache_x_max = get_as<double>(val, k);
      else if (key == "cache_tol") c.cache_tol = get_as<double>(val, k);
      else if (key == "threads") c.workers = get_as<unsigned>(val, k);
      else throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (c.verb == "sobolev" && !order_given) c.order = c.drift == "mu-s" ? c.s : 0.4;

  // Validation that does not need the drift built.
  const DriftKind kind = c.drift_kind();
  if (auto* mu = std::get_if<drift_kind::MuS>(&kind)) {
    mu->params.validate();
    mu->cache.validate();
  }
  if (!std::isfinite(c.x0)) throw ConfigError("x0 must be finite");
  if (!(c.p >= 1.0)) throw ConfigError("p must be >= 1");
  if (c.verb == "rate" || c.verb == "couple") {
    c.experiment().validate();
    if (c.verb == "couple") {
      for (const int n : c.n_list) {
        if (c.fine_steps % (8 * n) != 0) throw ConfigError("couple needs 8 n to divide fine_steps");
      }
    }
  } else if (c.verb == "kappa") {
    if (c.reps < 100) throw ConfigError("reps must be >= 100");
    if (c.fine_steps < 1024) throw ConfigError("kappa needs fine_steps >= 1024");
  } else if (c.verb == "occupation") {
    if (c.reps < 100) throw ConfigError("reps must be >= 100");
    if (c.deltas.size() < 3) throw ConfigError("occupation needs at least 3 deltas");
    if (c.fine_steps < 16) throw ConfigError("fine_steps must be >= 16");
  } else if (c.verb == "transform-check") {
    check_n_list(c.n_list);
    if (c.reps < 100) throw ConfigError("reps must be >= 100");
    c.fine_steps = c.n_list.back();
  } else if (c.verb == "sobolev") {
    if (!(c.order > 0.0 && c.order < 1.0)) throw ConfigError("sobolev order must lie in (0, 1)");
    if (c.mesh < 16) throw ConfigError("mesh must be >= 16");
    if (c.doublings < 3 || c.doublings > 8) throw ConfigError("doublings must be in [3, 8]");
    if (!(c.domain > 0.0)) throw ConfigError("domain must be positive");
  }
  return c;
}

}  // namespace strongrate
