#include "neorl/planner/icem.hpp"

#include "neorl/planner/colored_noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace neorl::planner {

void PlannerConfig::validate() const {
  if (num_samples < 1) throw std::invalid_argument("planner: num_samples must be >= 1");
  if (num_elites < 1) throw std::invalid_argument("planner: num_elites must be >= 1");
  if (num_elites > num_samples) throw std::invalid_argument("planner: num_elites must be <= num_samples");
  if (optimizer_steps < 1) throw std::invalid_argument("planner: optimizer_steps must be >= 1");
  if (horizon < 1) throw std::invalid_argument("planner: horizon (H_MPC) must be >= 1");
  if (particles < 1) throw std::invalid_argument("planner: particles must be >= 1");
  if (!(elite_keep_fraction >= 0.0 && elite_keep_fraction <= 1.0)) {
    throw std::invalid_argument("planner: elite_keep_fraction must lie in [0, 1]");
  }
  if (!(population_decay >= 1.0)) throw std::invalid_argument("planner: population_decay must be >= 1");
  if (!(colored_noise_exponent >= 0.0)) throw std::invalid_argument("planner: colored_noise_exponent must be >= 0");
  if (!(hallucination_init_std > 0.0)) throw std::invalid_argument("planner: hallucination_init_std must be > 0");
  if (init_std.size() > 0 && !(init_std.array() > 0.0).all()) {
    throw std::invalid_argument("planner: init_std must be positive");
  }
}

namespace {

ActionPlan to_plan(const Eigen::MatrixXd& decision, int du, double objective, const Eigen::MatrixXd& mean) {
  ActionPlan plan;
  plan.actions = decision.topRows(du);
  plan.hallucination = decision.bottomRows(decision.rows() - du);
  plan.objective = objective;
  plan.mean = mean;
  return plan;
}

}  // namespace

ActionPlan icem_plan(const PlanningProblem& problem, const StateVector& x0, const PlannerConfig& cfg,
                     PropagationMode mode, RandomStream& rng, const ActionPlan* warm_start, IcemTrace* trace) {
  cfg.validate();
  const int du = problem.control_dim();
  const int dx = problem.state_dim();
  const bool optimistic = mode == PropagationMode::Optimistic;
  const int rows = du + (optimistic ? dx : 0);
  const int horizon = cfg.horizon;

  Eigen::VectorXd lo(rows), hi(rows), std0(rows);
  lo.head(du) = problem.u_min;
  hi.head(du) = problem.u_max;
  std0.head(du) = cfg.init_std.size() > 0 ? cfg.init_std : Eigen::VectorXd(0.5 * (problem.u_max - problem.u_min));
  require_dim(std0.head(du).size(), du, "planner init_std");
  if (optimistic) {
    lo.tail(dx).setConstant(-1.0);
    hi.tail(dx).setConstant(1.0);
    std0.tail(dx).setConstant(cfg.hallucination_init_std);
  }
  auto clip = [&](Eigen::MatrixXd m) {
    m = m.cwiseMax(lo.replicate(1, horizon)).cwiseMin(hi.replicate(1, horizon));
    return m;
  };

  Eigen::MatrixXd mean = (0.5 * (lo + hi)).replicate(1, horizon);
  std::optional<Eigen::MatrixXd> warm_candidate;
  if (warm_start && warm_start->horizon() == horizon && warm_start->mean.rows() == rows) {
    mean = warm_start->mean;
    warm_candidate = clip(warm_start->decision());
  }
  Eigen::MatrixXd std = std0.replicate(1, horizon);

  RandomStream noise_rng = rng.split("rollout-noise");
  RandomStream sample_rng = rng.split("population");
  const RolloutNoise noise = draw_rollout_noise(problem, mode, horizon, cfg.particles, noise_rng);
  const ColoredNoise colored(horizon, cfg.colored_noise_exponent);
  RolloutStats stats;

  double best_cost = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best = mean;
  std::vector<Eigen::MatrixXd> kept;
  const int keep = static_cast<int>(std::ceil(cfg.elite_keep_fraction * cfg.num_elites));

  for (int it = 0; it < cfg.optimizer_steps; ++it) {
    const int fresh = std::max(cfg.num_elites,
                               static_cast<int>(std::lround(cfg.num_samples * std::pow(cfg.population_decay, -it))));
    std::vector<Eigen::MatrixXd> population;
    population.reserve(static_cast<std::size_t>(fresh) + kept.size() + 2);
    const Eigen::MatrixXd draws = colored.sample(static_cast<Eigen::Index>(fresh) * rows, sample_rng);
    for (int s = 0; s < fresh; ++s) {
      Eigen::MatrixXd z = draws.middleRows(static_cast<Eigen::Index>(s) * rows, rows);
      population.push_back(clip(mean + std.cwiseProduct(z)));
    }
    for (auto& e : kept) population.push_back(std::move(e));
    kept.clear();
    if (it == 0 && warm_candidate) population.push_back(*warm_candidate);
    if (it > 0 && it + 1 == cfg.optimizer_steps) population.push_back(clip(mean));

    const Eigen::VectorXd costs = evaluate_candidates(problem, mode, x0, population, noise, &stats);
    std::vector<Eigen::Index> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return costs[a] < costs[b]; });

    if (costs[order[0]] < best_cost) {
      best_cost = costs[order[0]];
      best = population[static_cast<std::size_t>(order[0])];
    }
    if (trace) {
      trace->best_objective.push_back(best_cost);
      trace->population_sizes.push_back(static_cast<int>(population.size()));
    }

    const int n_elite = std::min<int>(cfg.num_elites, static_cast<int>(population.size()));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, horizon);
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(rows, horizon);
    for (int e = 0; e < n_elite; ++e) {
      const auto& m = population[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])];
      sum += m;
      sq += m.cwiseAbs2();
    }
    mean = sum / n_elite;
    std = (sq / n_elite - mean.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
    for (int e = 0; e < std::min(keep, n_elite); ++e) {
      kept.push_back(population[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
    }
  }
  if (trace) trace->non_finite_particles += stats.non_finite_particles;
  return to_plan(best, du, best_cost, mean);
}

ActionPlan shift_plan(const ActionPlan& plan) {
  auto shift = [](const Eigen::MatrixXd& m) {
    if (m.cols() <= 1) return m;
    Eigen::MatrixXd out(m.rows(), m.cols());
    out.leftCols(m.cols() - 1) = m.rightCols(m.cols() - 1);
    out.col(m.cols() - 1) = m.col(m.cols() - 1);
    return out;
  };
  ActionPlan out;
  out.actions = shift(plan.actions);
  out.hallucination = shift(plan.hallucination);
  out.mean = shift(plan.mean);
  out.objective = plan.objective;
  return out;
}

MpcDecision mpc_act(const PlanningProblem& problem, const StateVector& x, const PlannerConfig& cfg,
                    PropagationMode mode, RandomStream& rng, const ActionPlan* previous, IcemTrace* trace) {
  std::optional<ActionPlan> warm;
  if (previous) warm = shift_plan(*previous);
  ActionPlan plan = icem_plan(problem, x, cfg, mode, rng, warm ? &*warm : nullptr, trace);
  ControlVector u = plan.actions.col(0).cwiseMax(problem.u_min).cwiseMin(problem.u_max);
  return {std::move(u), std::move(plan)};
}

}  // namespace neorl::planner
