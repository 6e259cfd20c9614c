#pragma once

#include "neorl/envs/registry.hpp"
#include "neorl/gp/calibrated_model.hpp"
#include "neorl/planner/icem.hpp"
#include "neorl/runner/schedule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace neorl::cli {

// Any problem with a configuration: unknown key, bad value, violated constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string env_name = "pendulum";
  envs::EnvOverrides env;
  std::vector<std::string> agents = {"neorl"};
  planner::PlannerConfig planner;
  long steps = 1000;
  runner::EpisodeSchedule schedule = runner::EpisodeSchedule::fixed(10);
  std::vector<std::uint64_t> seeds = {0};
  bool a_star_oracle = false;
  double a_star = 0.0;
  long oracle_burn_in = 500;
  long oracle_window = 2000;
  gp::GpModelConfig gp;
  std::string output_dir = "results";
  int jobs = 1;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Key/value pairs in file order. Later duplicates override earlier ones.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
ConfigEntries parse_entries(const std::string& text);

// Defaults for a named environment, including its planner row and GP settings.
ExperimentConfig defaults_for(const std::string& env_name);

// Resolves env.name first, starts from its defaults and applies every entry.
ExperimentConfig build_config(const ConfigEntries& entries);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Every recognised key, in canonical order.
const std::vector<std::string>& config_keys();

// Canonical "key = value" text of a resolved configuration; parsing it back
// gives the same configuration.
std::string to_text(const ExperimentConfig& cfg);

std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace neorl::cli
