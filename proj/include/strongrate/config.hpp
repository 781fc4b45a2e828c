#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "strongrate/drift.hpp"
#include "strongrate/experiments.hpp"

namespace strongrate {

inline constexpr std::string_view kVerbs[] = {"rate", "couple", "kappa", "occupation", "transform-check",
                                             "sobolev"};

bool is_verb(std::string_view verb);

// Fully resolved settings of one run. The flat JSON form mirrors the CLI
// flags; every report embeds it and feeding it back reproduces the run.
struct RunConfig {
  std::string verb;
  std::string drift = "mu-s";
  double s = 0.75;
  double x0 = 0.0;
  double p = 2.0;
  std::vector<int> n_list;
  int fine_steps = 0;
  int reps = 0;
  std::uint64_t seed = 42;
  double z = 1.0;                   // kappa
  double xi = 0.0;                  // occupation level
  std::vector<double> deltas;       // occupation windows
  double order = 0.0;               // sobolev probe order
  int mesh = 64;                    // sobolev initial mesh
  int doublings = 4;                // sobolev mesh doublings
  double domain = 4.0;              // sobolev half width
  int quad_panels = 1000;
  double quad_abs_tol = 1e-6;
  double cache_x_max = 16.0;
  double cache_tol = 1e-6;
  unsigned workers = 0;             // not serialised

  DriftKind drift_kind() const;
  ExperimentConfig experiment() const;
  nlohmann::ordered_json to_json() const;
};

// Applies per-verb defaults, then the keys of `overrides` (flat object; a
// report document is accepted through its "config" member), then validates.
// Unknown keys and invalid values throw ConfigError.
RunConfig resolve_config(std::string_view verb, const nlohmann::json& overrides);

}  // namespace strongrate
