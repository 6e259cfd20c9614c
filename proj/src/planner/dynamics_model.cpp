#include "neorl/planner/dynamics_model.hpp"

namespace neorl::planner {

void TrueDynamics::predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls,
                           Eigen::MatrixXd& mean, Eigen::MatrixXd& std) const {
  mean.resize(states.rows(), states.cols());
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    mean.col(j) = env_.deterministic_step(states.col(j), controls.col(j));
  }
  std = Eigen::MatrixXd::Zero(states.rows(), states.cols());
}

AffineDynamics::AffineDynamics(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::VectorXd offset,
                               Eigen::VectorXd std, double beta)
    : a_(std::move(a)), b_(std::move(b)), offset_(std::move(offset)), std_(std::move(std)), beta_(beta) {
  require_dim(b_.rows(), a_.rows(), "AffineDynamics B rows");
  require_dim(offset_.size(), a_.rows(), "AffineDynamics offset");
  require_dim(std_.size(), a_.rows(), "AffineDynamics std");
}

void AffineDynamics::predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls,
                             Eigen::MatrixXd& mean, Eigen::MatrixXd& std) const {
  mean = (a_ * states + b_ * controls).colwise() + offset_;
  std = std_.replicate(1, states.cols());
}

PlanningProblem make_problem(const DynamicsModel& model, const envs::Environment& env, bool process_noise) {
  PlanningProblem p;
  p.model = &model;
  p.cost = [&env](const StateVector& x, const ControlVector& u) { return env.cost(x, u); };
  p.u_min = env.spec().u_min;
  p.u_max = env.spec().u_max;
  p.noise_std = process_noise ? env.spec().noise_std : Eigen::VectorXd::Zero(env.spec().state_dim);
  return p;
}

}  // namespace neorl::planner
