#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levyfht/subordinators.hpp"
#include "levyfht/targets.hpp"

namespace levyfht {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value experiment description. Optional fields stay unset until
// the config file provides them; commands check for what they need.
struct ExperimentConfig {
  std::string command;  // rate, fht, extremes, ks-sweep, moments, poisson-field

  // subordinator
  std::optional<std::string> family;  // stable, tempered-stable, gamma
  std::optional<double> alpha, K, mu, C;
  double b = 0.0;

  // target
  std::optional<std::string> geometry;  // halfline, sphere, annulus, poissonballs
  std::optional<double> L, L_minus, L_plus, lambda, l, box_halfwidth;
  std::optional<int> d;

  // simulation
  double dt = 1e-5;
  std::optional<double> t_max;  // default: 1e3 / rho when rho is computable
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;

  // extremes
  std::vector<int> N_list;
  int k = 1;
  int resamples = 10000;

  std::string output_path;  // empty: standard output

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses "key = value" lines with '#' comments. Errors carry the key name
// and 1-based line number. Cross-field constraints of the underlying modules
// are re-validated here.
ExperimentConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Single-line form used for the "# ..." comment in every CSV.
std::string config_comment(const ExperimentConfig& config);

// Builders used by the commands; throw ConfigError naming missing keys.
SubordinatorSpec make_spec(const ExperimentConfig& config);
TargetSpec make_target(const ExperimentConfig& config);

// Runs the configured command; exit code 0 on success, 1 on configuration
// errors, 2 on numerical failure. Diagnostics go to stderr, data to
// output_path (or stdout when empty).
int run_command(const ExperimentConfig& config, int threads = 0);

}  // namespace levyfht
