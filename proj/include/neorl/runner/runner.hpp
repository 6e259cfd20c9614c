#pragma once

#include "neorl/core/dataset.hpp"
#include "neorl/envs/environment.hpp"
#include "neorl/gp/calibrated_model.hpp"
#include "neorl/planner/icem.hpp"
#include "neorl/runner/run_log.hpp"
#include "neorl/runner/schedule.hpp"

#include <functional>

namespace neorl::runner {

struct RunConfig {
  long total_steps = 1000;
  EpisodeSchedule schedule = EpisodeSchedule::fixed(10);
  planner::PropagationMode mode = planner::PropagationMode::Optimistic;
  planner::PlannerConfig planner;
  gp::GpModelConfig model;
  double a_star = 0.0;
  std::string a_star_source = "config";
  // Called after every model refit with the log so far.
  std::function<void(const RunLog&)> on_refit;

  void validate() const;
};

// Interaction loop on a single trajectory. Every step: plan with MPC on the
// current model, execute the first action, append the transition. The model
// is refit on all data at the schedule's boundaries (every H steps for a
// fixed schedule, at the end of each doubling episode otherwise). The system
// is never reset unless the environment's reset policy fires; resets keep
// data and the regret clock. A blow-up ends the run with a flagged, partial log.
RunLog run(const envs::Environment& env, const RunConfig& cfg, RandomStream rng,
           TransitionDataset* data_out = nullptr);

// Fixed(H) schedule only.
RunLog run_practical(const envs::Environment& env, const RunConfig& cfg, RandomStream rng,
                     TransitionDataset* data_out = nullptr);
// Doubling(H0) schedule only.
RunLog run_doubling(const envs::Environment& env, const RunConfig& cfg, RandomStream rng,
                    TransitionDataset* data_out = nullptr);

struct OracleEstimate {
  double average_cost = 0.0;
  long burn_in = 0;
  long window = 0;
  bool failed = false;
};

// MPC on the true dynamics (mu = f*, sigma = 0); average cost over the
// window that follows the burn-in.
OracleEstimate estimate_optimal_average_cost(const envs::Environment& env, const planner::PlannerConfig& cfg,
                                             RandomStream rng, long burn_in, long window);

}  // namespace neorl::runner
