#include "neorl/cli/plot_data.hpp"

#include "neorl/cli/csv.hpp"
#include "neorl/cli/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace neorl::cli {

namespace fs = std::filesystem;

Bundle load_bundle(const std::string& dir) {
  const fs::path manifest_path = fs::path(dir) / "seeds_manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("no seeds_manifest.json in " + dir);
  const nlohmann::json manifest = nlohmann::json::parse(in);
  Bundle b;
  b.env = manifest.at("env").get<std::string>();
  b.seeds = manifest.at("seeds").get<std::vector<std::uint64_t>>();
  for (const auto& agent : manifest.at("agents").get<std::vector<std::string>>()) {
    std::vector<runner::RunLog> logs;
    for (auto seed : b.seeds) {
      const std::string path = seed_csv_path(dir, agent, seed);
      if (!fs::exists(path)) continue;
      runner::RunLog log = read_run_csv(path);
      log.agent = agent;
      log.seed = seed;
      if (!log.steps.empty()) logs.push_back(std::move(log));
    }
    if (logs.empty()) continue;
    b.agents.push_back(agent);
    b.logs[agent] = std::move(logs);
  }
  return b;
}

PlotTables make_plot_tables(const Bundle& bundle, long stride) {
  if (stride < 1) throw std::invalid_argument("plotdata: stride must be >= 1");
  if (bundle.agents.empty()) throw std::invalid_argument("plotdata: bundle has no runs");
  PlotTables tables;
  const std::string header = "agent,t,mean,stderr\n";
  tables.avg_cost = tables.regret = tables.resets = header;
  auto row = [](std::string& out, const std::string& agent, long t, double mean, double se) {
    out += agent + ',' + std::to_string(t) + ',' + format_double(mean) + ',' + format_double(se) + '\n';
  };
  for (const auto& agent : bundle.agents) {
    const runner::Aggregate agg = runner::aggregate_seeds(bundle.logs.at(agent));
    for (std::size_t i = 0; i < agg.steps; ++i) {
      const long t = static_cast<long>(i);
      if ((t + 1) % stride != 0) continue;
      row(tables.avg_cost, agent, t, agg.avg_cost.mean[i], agg.avg_cost.stderr_[i]);
      row(tables.regret, agent, t, agg.regret.mean[i], agg.regret.stderr_[i]);
      row(tables.resets, agent, t, agg.resets.mean[i], agg.resets.stderr_[i]);
    }
  }
  return tables;
}

void emit_plot_data(const std::string& bundle_dir, const std::string& out_dir, long stride) {
  const PlotTables tables = make_plot_tables(load_bundle(bundle_dir), stride);
  fs::create_directories(out_dir);
  for (const auto& [name, text] : {std::pair{"avg_cost.csv", &tables.avg_cost},
                                   std::pair{"regret.csv", &tables.regret},
                                   std::pair{"resets.csv", &tables.resets}}) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(std::string("cannot write ") + name);
    out << *text;
  }
}

}  // namespace neorl::cli
