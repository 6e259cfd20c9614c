#pragma once

#include "neorl/planner/dynamics_model.hpp"

#include <string>
#include <vector>

namespace neorl::planner {

// How the next state is propagated inside a planning rollout:
//   Optimistic:           mu + beta sigma * eta_h + w_h   (eta_h decision variables)
//   Mean:                 mu + w_h
//   DistributionSampling: mu + sqrt(beta^2 sigma^2 + s_w^2) * eps_h
//   Thompson:             mu + beta sigma * xi_h + w_h    (xi drawn once per planning call)
enum class PropagationMode { Optimistic, Mean, DistributionSampling, Thompson };

std::string agent_name(PropagationMode mode);
PropagationMode mode_from_agent_name(const std::string& name);

inline constexpr double kNonFinitePenalty = 1e8;

// Open-loop decision variables over the MPC horizon.
struct ActionPlan {
  Eigen::MatrixXd actions;        // d_u x H
  Eigen::MatrixXd hallucination;  // d_x x H, Optimistic only (0 rows otherwise)
  double objective = 0.0;
  Eigen::MatrixXd mean;           // sampling mean the plan came from, (d_u [+ d_x]) x H

  int horizon() const { return static_cast<int>(actions.cols()); }
  // Stacked decision matrix [actions; hallucination].
  Eigen::MatrixXd decision() const;
};

// Random numbers shared by every candidate of one planning call, so that
// candidates are compared under common noise and the objective is a
// deterministic function of the plan within the call.
struct RolloutNoise {
  std::vector<Eigen::MatrixXd> process;  // per step: d_x x particles, standard normal
  Eigen::MatrixXd thompson;              // d_x x H, standard normal (Thompson only)
  int particles = 1;
};

RolloutNoise draw_rollout_noise(const PlanningProblem& problem, PropagationMode mode, int horizon,
                                int particles, RandomStream& rng);

struct RolloutStats {
  long non_finite_particles = 0;
};

// Expected H-step cost sum_{h<H} c(x_h, u_h) of each candidate, averaged over
// particles. Candidates are decision matrices (d_u [+ d_x]) x H.
Eigen::VectorXd evaluate_candidates(const PlanningProblem& problem, PropagationMode mode,
                                    const StateVector& x0, const std::vector<Eigen::MatrixXd>& candidates,
                                    const RolloutNoise& noise, RolloutStats* stats = nullptr);

double rollout_model(const PlanningProblem& problem, PropagationMode mode, const StateVector& x0,
                     const ActionPlan& plan, int particles, RandomStream& rng);

}  // namespace neorl::planner
