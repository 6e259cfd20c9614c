#include "neorl/envs/toy.hpp"

namespace neorl::envs {

namespace {

EnvSpec scalar_spec(const std::string& name, double u_max, double noise, double x0) {
  EnvSpec s;
  s.name = name;
  s.state_dim = 1;
  s.control_dim = 1;
  s.u_min = Eigen::VectorXd::Constant(1, -u_max);
  s.u_max = Eigen::VectorXd::Constant(1, u_max);
  s.noise_std = Eigen::VectorXd::Constant(1, noise);
  s.initial_state = Eigen::VectorXd::Constant(1, x0);
  return s;
}

}  // namespace

ConstantCostEnv::ConstantCostEnv(double cost_value, double decay)
    : Environment(scalar_spec("dummy", 1.0, 1e-3, 0.0)), cost_value_(cost_value), decay_(decay) {}

StateVector ConstantCostEnv::dynamics(const StateVector& x, const ControlVector& u) const {
  return decay_ * x + u;
}

ScalarLinearEnv::ScalarLinearEnv() : ScalarLinearEnv(Params{}) {}

ScalarLinearEnv::ScalarLinearEnv(Params p)
    : Environment(scalar_spec("linear1d", p.u_max, p.noise_std, p.initial_state)), p_(p) {}

StateVector ScalarLinearEnv::dynamics(const StateVector& x, const ControlVector& u) const {
  return p_.a * x + p_.b * u;
}

double ScalarLinearEnv::cost(const StateVector& x, const ControlVector& u) const {
  return p_.q * x[0] * x[0] + p_.r * u[0] * u[0];
}

}  // namespace neorl::envs
