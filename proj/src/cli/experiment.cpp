#include "neorl/cli/experiment.hpp"

#include "neorl/cli/csv.hpp"
#include "neorl/envs/registry.hpp"
#include "neorl/runner/aggregate.hpp"
#include "neorl/runner/runner.hpp"

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace neorl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json seed_entry(std::uint64_t seed, const runner::RunLog& log) {
  json e;
  e["seed"] = seed;
  e["steps"] = log.steps.size();
  e["final_avg_cost"] = log.steps.empty() ? 0.0 : log.steps.back().avg_cost;
  e["final_regret"] = log.steps.empty() ? 0.0 : log.steps.back().regret;
  e["reset_count"] = log.reset_count;
  e["failed"] = log.failed;
  if (log.failed) e["failure"] = log.failure;
  return e;
}

json checkpoint_table(const std::vector<runner::RunLog>& logs, long T) {
  json rows = json::array();
  const runner::Aggregate agg = runner::aggregate_seeds(logs);
  for (long t : dyadic_checkpoints(T)) {
    if (static_cast<std::size_t>(t) > agg.steps) break;
    const auto i = static_cast<std::size_t>(t - 1);
    rows.push_back({{"t", t},
                    {"avg_cost_mean", agg.avg_cost.mean[i]},
                    {"avg_cost_stderr", agg.avg_cost.stderr_[i]},
                    {"regret_mean", agg.regret.mean[i]},
                    {"regret_stderr", agg.regret.stderr_[i]},
                    {"resets_mean", agg.resets.mean[i]},
                    {"resets_stderr", agg.resets.stderr_[i]}});
  }
  return rows;
}

std::unique_ptr<envs::Environment> make_env(const ExperimentConfig& cfg) {
  return envs::make_environment(cfg.env_name, cfg.env);
}

}  // namespace

std::vector<long> dyadic_checkpoints(long T) {
  std::vector<long> out;
  for (long t : {T / 8, T / 4, T / 2, T}) {
    if (t >= 1 && (out.empty() || out.back() != t)) out.push_back(t);
  }
  return out;
}

std::string seed_csv_path(const std::string& dir, const std::string& agent, std::uint64_t seed) {
  return (fs::path(dir) / agent / ("seed_" + std::to_string(seed) + ".csv")).string();
}

OracleResult estimate_oracle(const ExperimentConfig& cfg) {
  const auto env = make_env(cfg);
  const runner::OracleEstimate est = runner::estimate_optimal_average_cost(
      *env, cfg.planner, RandomStream(cfg.seeds.front()).split("oracle"), cfg.oracle_burn_in, cfg.oracle_window);
  return {est.average_cost, est.burn_in, est.window, est.failed};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentOptions& options) {
  cfg.validate();
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  for (const auto& agent : cfg.agents) fs::create_directories(dir / agent);

  json manifest;
  manifest["version"] = kVersion;
  manifest["env"] = cfg.env_name;
  manifest["agents"] = cfg.agents;
  manifest["seeds"] = cfg.seeds;
  manifest["steps"] = cfg.steps;
  write_text(dir / "seeds_manifest.json", manifest.dump(2) + "\n");
  write_text(dir / "config.txt", to_text(cfg));

  ExperimentResult result;
  result.dir = dir.string();
  if (cfg.a_star_oracle) {
    if (options.progress) options.progress("estimating A* with the oracle planner");
    const OracleResult oracle = estimate_oracle(cfg);
    if (oracle.failed) throw std::runtime_error("oracle run blew up; cannot estimate A*");
    result.a_star = oracle.average_cost;
    result.a_star_source = "oracle";
    write_text(dir / "oracle.json", json({{"a_star", oracle.average_cost},
                                          {"burn_in", oracle.burn_in},
                                          {"window", oracle.window}})
                                            .dump(2) +
                                        "\n");
  } else {
    result.a_star = cfg.a_star;
    result.a_star_source = "config";
  }

  struct Task {
    std::string agent;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& agent : cfg.agents)
    for (auto seed : cfg.seeds) tasks.push_back({agent, seed});
  std::vector<runner::RunLog> logs(tasks.size());
  std::vector<bool> resumed(tasks.size(), false);

  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        const Task& task = tasks[i];
        const std::string path = seed_csv_path(dir.string(), task.agent, task.seed);
        if (options.resume && fs::exists(path)) {
          runner::RunLog previous = read_run_csv(path);
          if (static_cast<long>(previous.steps.size()) == cfg.steps) {
            previous.agent = task.agent;
            previous.env = cfg.env_name;
            previous.seed = task.seed;
            previous.a_star = result.a_star;
            previous.a_star_source = result.a_star_source;
            logs[i] = std::move(previous);
            resumed[i] = true;
            continue;
          }
        }
        const auto env = make_env(cfg);
        runner::RunConfig rc;
        rc.total_steps = cfg.steps;
        rc.schedule = cfg.schedule;
        rc.mode = planner::mode_from_agent_name(task.agent);
        rc.planner = cfg.planner;
        rc.model = cfg.gp;
        rc.a_star = result.a_star;
        rc.a_star_source = result.a_star_source;
        RunCsvWriter writer(path);
        rc.on_refit = [&writer](const runner::RunLog& log) { writer.sync(log); };
        logs[i] = runner::run(*env, rc, RandomStream(task.seed));
        writer.sync(logs[i]);
        if (options.progress) {
          std::lock_guard lock(progress_mutex);
          const auto& log = logs[i];
          options.progress(task.agent + " seed " + std::to_string(task.seed) + ": " +
                           (log.failed ? "FAILED (" + log.failure + ")"
                                       : "avg cost " + format_double(log.steps.back().avg_cost)));
        }
      } catch (...) {
        std::lock_guard lock(progress_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  json summary;
  summary["version"] = kVersion;
  summary["env"] = cfg.env_name;
  summary["steps"] = cfg.steps;
  summary["a_star"] = result.a_star;
  summary["a_star_source"] = result.a_star_source;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (logs[i].failed) ++result.failed_runs;
    if (resumed[i]) ++result.resumed_runs;
    result.logs[tasks[i].agent].push_back(logs[i]);
  }
  for (const auto& agent : cfg.agents) {
    const auto& agent_logs = result.logs[agent];
    json entry;
    entry["seeds"] = json::array();
    for (std::size_t s = 0; s < agent_logs.size(); ++s) entry["seeds"].push_back(seed_entry(cfg.seeds[s], agent_logs[s]));
    entry["checkpoints"] = checkpoint_table(agent_logs, cfg.steps);
    summary["agents"][agent] = entry;
  }
  summary["failed_runs"] = result.failed_runs;
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return result;
}

}  // namespace neorl::cli
