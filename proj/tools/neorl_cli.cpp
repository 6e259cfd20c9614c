#include "neorl/cli/config.hpp"
#include "neorl/cli/csv.hpp"
#include "neorl/cli/experiment.hpp"
#include "neorl/cli/plot_data.hpp"
#include "neorl/envs/pendulum.hpp"
#include "neorl/envs/registry.hpp"
#include "neorl/planner/dynamics_model.hpp"
#include "neorl/runner/aggregate.hpp"
#include "neorl/theory/bounds.hpp"
#include "neorl/theory/drift.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace neorl;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

// Flags shared by the subcommands that build an experiment configuration.
struct ConfigFlags {
  std::string config_path;
  std::string env, agent, seeds, out;
  long steps = 0;
  long horizon = 0;
  double beta = -1.0;
  int jobs = 0;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Configuration file (key = value lines)");
    app->add_option("--env", env, "Environment name");
    app->add_option("--agent", agent, "Agent name(s): neorl, nemean, nepets, nets (comma separated)");
    app->add_option("--steps", steps, "Number of environment steps T");
    app->add_option("--seeds", seeds, "Seeds, e.g. 0-9 or 1,2,3");
    app->add_option("--out", out, "Output directory");
    app->add_option("--beta", beta, "Fixed confidence width beta");
    app->add_option("--horizon", horizon, "Refit period H (or H0 for the doubling schedule)");
    app->add_option("--jobs", jobs, "Parallel runs");
    app->add_option("--set", sets, "Extra key=value override (repeatable)");
  }

  cli::ExperimentConfig resolve() const {
    cli::ConfigEntries entries;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw cli::ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      entries = cli::parse_entries(ss.str());
    }
    if (!env.empty()) entries.emplace_back("env.name", env);
    if (!agent.empty()) entries.emplace_back("agent.name", agent);
    if (steps != 0) entries.emplace_back("run.steps", std::to_string(steps));
    if (!seeds.empty()) entries.emplace_back("run.seeds", seeds);
    if (!out.empty()) entries.emplace_back("output.dir", out);
    if (beta >= 0.0) {
      entries.emplace_back("gp.beta_schedule", "fixed");
      entries.emplace_back("gp.beta", cli::format_double(beta));
    }
    if (horizon != 0) entries.emplace_back("run.h", std::to_string(horizon));
    if (jobs != 0) entries.emplace_back("run.jobs", std::to_string(jobs));
    for (const auto& s : sets) {
      const auto parsed = cli::parse_entries(s);
      if (parsed.size() != 1) throw cli::ConfigError("--set expects a single key=value, got '" + s + "'");
      entries.push_back(parsed.front());
    }
    return cli::build_config(entries);
  }
};

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

json report_json(const theory::DriftReport& r) {
  return {{"states_tested", r.states_tested},   {"mc_per_state", r.mc_per_state},
          {"violation_fraction", r.violation_fraction}, {"worst_margin", r.worst_margin},
          {"half_width", r.half_width},         {"fitted_K", r.fitted_K}};
}

int cmd_run(const ConfigFlags& flags, bool resume) {
  const cli::ExperimentConfig cfg = flags.resolve();
  cli::ExperimentOptions options;
  options.resume = resume;
  options.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  const cli::ExperimentResult result = cli::run_experiment(cfg, options);
  std::cerr << "bundle written to " << result.dir << " (" << result.failed_runs << " failed runs)\n";
  return result.failed_runs > 0 ? kExitPartial : kExitOk;
}

int cmd_oracle(const ConfigFlags& flags, const std::string& out) {
  const cli::ExperimentConfig cfg = flags.resolve();
  const cli::OracleResult r = cli::estimate_oracle(cfg);
  emit_json({{"env", cfg.env_name},
             {"a_star", r.average_cost},
             {"burn_in", r.burn_in},
             {"window", r.window},
             {"failed", r.failed}},
            out);
  return r.failed ? kExitPartial : kExitOk;
}

int cmd_plotdata(const std::string& bundle, const std::string& out, long stride) {
  cli::emit_plot_data(bundle, out.empty() ? bundle + "/plot" : out, stride);
  return kExitOk;
}

json verify_sublinearity(const std::string& bundle_dir) {
  const cli::Bundle bundle = cli::load_bundle(bundle_dir);
  json out;
  for (const auto& agent : bundle.agents) {
    const runner::Aggregate agg = runner::aggregate_seeds(bundle.logs.at(agent));
    const theory::SublinearityReport r = theory::check_sublinearity(agg.regret.mean);
    out[agent] = {{"checkpoints", r.checkpoints}, {"ratios", r.ratios}, {"sublinear", r.sublinear}};
  }
  return out;
}

json verify_gamma(const std::string& kernel, double T, int d) {
  const auto family = gp::kernel_family_from_string(kernel);
  return {{"kernel", kernel}, {"T", T}, {"d", d}, {"gamma_T", theory::gamma_T_asymptote(family, T, d)}};
}

// Drift of V under the oracle MPC policy on pendulum or linear1d.
json verify_drift(const cli::ExperimentConfig& cfg, double gamma, int states, int mc) {
  const auto env = envs::make_environment(cfg.env_name, cfg.env);
  theory::LyapunovSpec spec;
  theory::StateSampler sampler;
  if (cfg.env_name == "pendulum") {
    spec.V = [](const StateVector& x) {
      const double th = envs::Pendulum::angle(x);
      return 1.0 - std::cos(th) + 0.1 * x[2] * x[2];
    };
    sampler = [](RandomStream& r) {
      return envs::Pendulum::from_angle(r.uniform(-std::numbers::pi, std::numbers::pi), r.uniform(-8.0, 8.0));
    };
  } else if (cfg.env_name == "linear1d") {
    spec.V = [](const StateVector& x) { return x.squaredNorm(); };
    sampler = [](RandomStream& r) { return StateVector::Constant(1, r.uniform(-5.0, 5.0)); };
  } else {
    throw cli::ConfigError("env.name: drift verification supports pendulum and linear1d");
  }
  spec.gamma = gamma;
  spec.K = 0.0;

  const planner::TrueDynamics truth(*env);
  const planner::PlanningProblem problem = planner::make_problem(truth, *env, cfg.planner.process_noise);
  RandomStream plan_rng = RandomStream(cfg.seeds.front()).split("policy");
  const theory::PolicyFn policy = [&](const StateVector& x) {
    RandomStream local = plan_rng;
    return planner::mpc_act(problem, x, cfg.planner, planner::PropagationMode::Mean, local).action;
  };
  const theory::StepFn step = [&](const StateVector& x, const ControlVector& u, RandomStream& r) {
    return env->true_step(x, u, r);
  };
  const theory::DriftReport report =
      theory::check_drift(step, policy, spec, sampler, states, mc, RandomStream(cfg.seeds.front()));
  json j = report_json(report);
  j["env"] = cfg.env_name;
  j["gamma"] = gamma;
  j["violation_fraction_at_fitted_K"] = theory::violation_fraction_with_K(report, gamma, report.fitted_K);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonepisodic optimistic model-based RL with GP dynamics"};
  app.require_subcommand(1);

  ConfigFlags run_flags, oracle_flags, verify_flags;
  bool resume = false;
  auto* run = app.add_subcommand("run", "Run an experiment sweep (agents x seeds)");
  run_flags.attach(run);
  run->add_flag("--resume", resume, "Reuse complete seed CSVs already in the output directory");

  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Estimate the optimal average cost A* with MPC on the true dynamics");
  oracle_flags.attach(oracle);
  oracle->add_option("--json", oracle_out, "Write the estimate to this file instead of stdout");

  std::string check = "sublinearity", bundle, verify_out, kernel = "rbf";
  double gamma_T = 1000.0, drift_gamma = 0.99;
  int gamma_d = 1, drift_states = 50, drift_mc = 50;
  auto* verify = app.add_subcommand("verify", "Theory checks: sublinearity, gamma, drift");
  verify_flags.attach(verify);
  verify->add_option("--check", check, "sublinearity | gamma | drift")
      ->check(CLI::IsMember({"sublinearity", "gamma", "drift"}));
  verify->add_option("--bundle", bundle, "Result bundle directory (sublinearity)");
  verify->add_option("--kernel", kernel, "Kernel family (gamma)");
  verify->add_option("--T", gamma_T, "Horizon T (gamma)");
  verify->add_option("--d", gamma_d, "Input dimension d (gamma)");
  verify->add_option("--gamma", drift_gamma, "Contraction factor (drift)");
  verify->add_option("--states", drift_states, "Sampled states (drift)");
  verify->add_option("--mc", drift_mc, "Monte Carlo draws per state (drift)");
  verify->add_option("--json", verify_out, "Write the report to this file instead of stdout");

  std::string plot_bundle, plot_out;
  long stride = 1;
  auto* plot = app.add_subcommand("plotdata", "Emit average-cost, regret and reset tables from a bundle");
  plot->add_option("--bundle", plot_bundle, "Result bundle directory")->required();
  plot->add_option("--out", plot_out, "Output directory (default <bundle>/plot)");
  plot->add_option("--stride", stride, "Keep every stride-th step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_flags, resume);
    if (*oracle) return cmd_oracle(oracle_flags, oracle_out);
    if (*plot) return cmd_plotdata(plot_bundle, plot_out, stride);
    if (*verify) {
      if (check == "sublinearity") {
        if (bundle.empty()) throw cli::ConfigError("verify: --bundle is required for the sublinearity check");
        emit_json(verify_sublinearity(bundle), verify_out);
      } else if (check == "gamma") {
        emit_json(verify_gamma(kernel, gamma_T, gamma_d), verify_out);
      } else {
        emit_json(verify_drift(verify_flags.resolve(), drift_gamma, drift_states, drift_mc), verify_out);
      }
      return kExitOk;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
