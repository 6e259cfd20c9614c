#pragma once

#include "neorl/planner/rollout.hpp"

#include <optional>

namespace neorl::planner {

// Population settings of the iCEM trajectory optimizer. The first five fields
// follow the usual per-environment hyperparameter table (number of samples,
// number of elites, optimizer steps, MPC horizon, particles).
struct PlannerConfig {
  int num_samples = 500;
  int num_elites = 50;
  int optimizer_steps = 10;
  int horizon = 20;
  int particles = 5;
  double colored_noise_exponent = 2.0;
  double elite_keep_fraction = 0.3;
  double population_decay = 1.25;
  // Initial sampling std per control dimension; empty means half the control range.
  Eigen::VectorXd init_std;
  double hallucination_init_std = 1.0;
  bool process_noise = true;

  void validate() const;
};

struct IcemTrace {
  std::vector<double> best_objective;  // best-ever objective after each iteration
  std::vector<int> population_sizes;
  long non_finite_particles = 0;
};

// Cross-entropy search over (action, hallucination) sequences with
// colored-noise sampling, shrinking populations and elite reuse. Returns the
// best plan evaluated across all iterations. warm_start, when given, supplies
// the initial sampling mean and one extra candidate.
ActionPlan icem_plan(const PlanningProblem& problem, const StateVector& x0, const PlannerConfig& cfg,
                     PropagationMode mode, RandomStream& rng, const ActionPlan* warm_start = nullptr,
                     IcemTrace* trace = nullptr);

// Shifts a plan one step forward in time, repeating the final entry.
ActionPlan shift_plan(const ActionPlan& plan);

struct MpcDecision {
  ControlVector action;
  ActionPlan plan;
};

// Receding-horizon step: plan from x and return the first action.
MpcDecision mpc_act(const PlanningProblem& problem, const StateVector& x, const PlannerConfig& cfg,
                    PropagationMode mode, RandomStream& rng, const ActionPlan* previous = nullptr,
                    IcemTrace* trace = nullptr);

}  // namespace neorl::planner
