#include "neorl/runner/runner.hpp"

#include <chrono>
#include <optional>

namespace neorl::runner {

void RunLog::record(double cost, long episode, bool did_reset) {
  StepRecord r;
  r.t = static_cast<long>(steps.size());
  r.cost = cost;
  const double prev_cum = steps.empty() ? 0.0 : steps.back().cum_cost;
  const double prev_regret = steps.empty() ? 0.0 : steps.back().regret;
  r.cum_cost = prev_cum + cost;
  r.regret = prev_regret + (cost - a_star);
  r.avg_cost = r.cum_cost / static_cast<double>(r.t + 1);
  r.episode = episode;
  r.did_reset = did_reset;
  if (did_reset) ++reset_count;
  steps.push_back(r);
}

void RunConfig::validate() const {
  if (total_steps < 1) throw std::invalid_argument("run: total steps T must be >= 1");
  schedule.validate();
  planner.validate();
}

namespace {

std::shared_ptr<const gp::CalibratedModel> refit(const TransitionDataset& ds, const gp::GpModelConfig& cfg,
                                                 double beta_floor) {
  return std::make_shared<const gp::CalibratedModel>(gp::CalibratedModel::fit(ds, cfg, beta_floor));
}

}  // namespace

RunLog run(const envs::Environment& env, const RunConfig& cfg, RandomStream rng, TransitionDataset* data_out) {
  cfg.validate();
  const auto& spec = env.spec();
  RunLog log;
  log.env = spec.name;
  log.agent = planner::agent_name(cfg.mode);
  log.seed = rng.seed();
  log.a_star = cfg.a_star;
  log.a_star_source = cfg.a_star_source;

  TransitionDataset data(spec.state_dim, spec.control_dim);
  const std::vector<long> boundaries = refit_boundaries(cfg.schedule, cfg.total_steps);
  std::size_t next_boundary = 0;
  long episode = 0;

  RandomStream env_rng = rng.split("env");
  RandomStream reset_rng = rng.split("reset");
  const RandomStream plan_rng = rng.split("plan");

  auto model = std::make_shared<const gp::CalibratedModel>(
      gp::CalibratedModel::prior(spec.state_dim, spec.control_dim, cfg.model));
  auto dynamics = std::make_unique<planner::GpDynamics>(model);
  std::optional<planner::ActionPlan> previous;
  StateVector x = spec.initial_state;

  try {
    for (long t = 0; t < cfg.total_steps; ++t) {
      const planner::PlanningProblem problem = planner::make_problem(*dynamics, env, cfg.planner.process_noise);
      RandomStream step_rng = plan_rng.split(static_cast<std::uint64_t>(t));
      planner::IcemTrace trace;
      planner::MpcDecision decision = planner::mpc_act(problem, x, cfg.planner, cfg.mode, step_rng,
                                                       previous ? &*previous : nullptr, &trace);
      log.non_finite_particles += trace.non_finite_particles;

      const double c = env.cost(x, decision.action);
      const StateVector next = env.true_step(x, decision.action, env_rng);
      data.append({x, decision.action, next});
      log.states.push_back(x);

      const envs::ResetResult reset = env.reset_if_triggered(next, reset_rng);
      log.record(c, episode, reset.did_reset);
      x = reset.state;
      previous = reset.did_reset ? std::nullopt : std::optional(std::move(decision.plan));

      if (next_boundary < boundaries.size() && t + 1 == boundaries[next_boundary]) {
        const auto start = std::chrono::steady_clock::now();
        model = refit(data, cfg.model, model->beta());
        dynamics = std::make_unique<planner::GpDynamics>(model);
        RefitRecord r;
        r.index = static_cast<long>(log.refits.size());
        r.after_step = t + 1;
        r.dataset_size = data.size();
        r.model_points = static_cast<std::size_t>(model->posterior().size());
        r.information_gain = model->information_gain();
        r.beta = model->beta();
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log.refits.push_back(r);
        ++next_boundary;
        ++episode;
        if (cfg.on_refit) cfg.on_refit(log);
      }
    }
  } catch (const envs::BlowUpError& e) {
    log.failed = true;
    log.failure = e.what();
  } catch (const gp::FactorizationError& e) {
    log.failed = true;
    log.failure = e.what();
  }
  if (data_out) *data_out = std::move(data);
  return log;
}

RunLog run_practical(const envs::Environment& env, const RunConfig& cfg, RandomStream rng,
                     TransitionDataset* data_out) {
  if (cfg.schedule.kind != EpisodeSchedule::Kind::Fixed) {
    throw std::invalid_argument("run_practical requires a fixed schedule");
  }
  return run(env, cfg, rng, data_out);
}

RunLog run_doubling(const envs::Environment& env, const RunConfig& cfg, RandomStream rng,
                    TransitionDataset* data_out) {
  if (cfg.schedule.kind != EpisodeSchedule::Kind::Doubling) {
    throw std::invalid_argument("run_doubling requires a doubling schedule");
  }
  return run(env, cfg, rng, data_out);
}

OracleEstimate estimate_optimal_average_cost(const envs::Environment& env, const planner::PlannerConfig& cfg,
                                             RandomStream rng, long burn_in, long window) {
  if (burn_in < 0 || window < 1) throw std::invalid_argument("oracle: need burn_in >= 0 and window >= 1");
  const planner::TrueDynamics truth(env);
  const planner::PlanningProblem problem = planner::make_problem(truth, env, cfg.process_noise);
  RandomStream env_rng = rng.split("env");
  RandomStream reset_rng = rng.split("reset");
  const RandomStream plan_rng = rng.split("plan");

  OracleEstimate out;
  out.burn_in = burn_in;
  out.window = window;
  StateVector x = env.spec().initial_state;
  std::optional<planner::ActionPlan> previous;
  double sum = 0.0;
  try {
    for (long t = 0; t < burn_in + window; ++t) {
      RandomStream step_rng = plan_rng.split(static_cast<std::uint64_t>(t));
      planner::MpcDecision d = planner::mpc_act(problem, x, cfg, planner::PropagationMode::Mean, step_rng,
                                                previous ? &*previous : nullptr);
      if (t >= burn_in) sum += env.cost(x, d.action);
      const envs::ResetResult reset = env.reset_if_triggered(env.true_step(x, d.action, env_rng), reset_rng);
      x = reset.state;
      previous = reset.did_reset ? std::nullopt : std::optional(std::move(d.plan));
    }
  } catch (const envs::BlowUpError&) {
    out.failed = true;
  }
  out.average_cost = sum / static_cast<double>(window);
  return out;
}

}  // namespace neorl::runner
