#pragma once

#include "neorl/cli/config.hpp"
#include "neorl/runner/run_log.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace neorl::cli {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentOptions {
  // Reuse seed CSVs that already hold all T rows instead of rerunning them.
  bool resume = false;
  std::function<void(const std::string&)> progress;
};

struct ExperimentResult {
  std::string dir;
  double a_star = 0.0;
  std::string a_star_source;
  std::map<std::string, std::vector<runner::RunLog>> logs;  // agent -> one log per seed, in seed order
  long failed_runs = 0;
  long resumed_runs = 0;
};

// Runs every (agent, seed) pair and writes the result bundle under cfg.output_dir:
//   seeds_manifest.json   written first
//   config.txt            resolved configuration
//   <agent>/seed_<s>.csv  per-run step log, flushed at each refit
//   oracle.json           when A* is estimated
//   summary.json          written last
ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentOptions& options = {});

struct OracleResult {
  double average_cost = 0.0;
  long burn_in = 0;
  long window = 0;
  bool failed = false;
};

// A* estimate: MPC on the true dynamics with the configured planner.
OracleResult estimate_oracle(const ExperimentConfig& cfg);

std::string seed_csv_path(const std::string& dir, const std::string& agent, std::uint64_t seed);

// T/8, T/4, T/2, T (deduplicated, each >= 1).
std::vector<long> dyadic_checkpoints(long T);

}  // namespace neorl::cli
