#pragma once

#include "neorl/runner/aggregate.hpp"

#include <map>
#include <string>
#include <vector>

namespace neorl::cli {

// Seed logs of a bundle, read back from its CSVs and grouped by agent.
struct Bundle {
  std::string env;
  std::vector<std::string> agents;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, std::vector<runner::RunLog>> logs;
};

// Reads the manifest and every seed CSV present. Missing CSVs (interrupted
// sweeps) are skipped; an agent with no CSV at all is dropped.
Bundle load_bundle(const std::string& dir);

struct PlotTables {
  std::string avg_cost;  // agent,t,mean,stderr
  std::string regret;
  std::string resets;
};

// One row per agent for every step t with (t + 1) % stride == 0.
PlotTables make_plot_tables(const Bundle& bundle, long stride = 1);

// Writes avg_cost.csv, regret.csv and resets.csv into out_dir.
void emit_plot_data(const std::string& bundle_dir, const std::string& out_dir, long stride = 1);

}  // namespace neorl::cli
