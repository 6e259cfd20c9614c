#include "neorl/envs/cartpole.hpp"

#include <algorithm>
#include <cmath>

namespace neorl::envs {

namespace {

EnvSpec cartpole_spec(CartPole::Task task, const CartPole::Params& p) {
  EnvSpec s;
  s.name = task == CartPole::Task::SwingUp ? "cartpole" : "cartpole_balance";
  s.state_dim = 5;
  s.control_dim = 1;
  s.u_min = Eigen::VectorXd::Constant(1, -1.0);
  s.u_max = Eigen::VectorXd::Constant(1, 1.0);
  s.dt = p.dt;
  s.action_repeat = 2;
  s.noise_std = Eigen::VectorXd::Constant(5, 1e-3);
  s.initial_state = CartPole::make_state(0.0, task == CartPole::Task::SwingUp ? M_PI : 0.0, 0.0, 0.0);
  return s;
}

}  // namespace

CartPole::CartPole(Task task) : CartPole(task, Params{}) {}

CartPole::CartPole(Task task, Params p) : Environment(cartpole_spec(task, p)), task_(task), p_(p) {
  if (task_ == Task::Balance) set_reset_policy(triggering_reset_policy());
}

StateVector CartPole::make_state(double position, double theta, double velocity, double theta_dot) {
  StateVector x(5);
  x << position, std::cos(theta), std::sin(theta), velocity, theta_dot;
  return x;
}

ResetPolicy CartPole::triggering_reset_policy() const { return ResetPolicy::on(&CartPole::pole_dropped); }

StateVector CartPole::dynamics(const StateVector& x, const ControlVector& u) const {
  const double force = p_.force_mag * std::clamp(u[0], -1.0, 1.0);
  const double total_mass = p_.cart_mass + p_.pole_mass;
  const double pole_ml = p_.pole_mass * p_.half_length;
  double theta = std::atan2(x[2], x[1]);
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double theta_dot = x[4];

  const double temp = (force + pole_ml * theta_dot * theta_dot * sin_t) / total_mass;
  const double theta_acc = (p_.gravity * sin_t - cos_t * temp) /
                           (p_.half_length * (4.0 / 3.0 - p_.pole_mass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_ml * theta_acc * cos_t / total_mass;

  const double position = x[0] + p_.dt * x[3];
  const double velocity = x[3] + p_.dt * x_acc;
  theta += p_.dt * theta_dot;
  return make_state(position, theta, velocity, theta_dot + p_.dt * theta_acc);
}

double CartPole::cost(const StateVector& x, const ControlVector& u) const {
  const double dx = x[0] - p_.target_position;
  const double dc = x[1] / std::hypot(x[1], x[2]) - 1.0;
  return dx * dx + 10.0 * dc * dc + 0.2 * u.squaredNorm();
}

}  // namespace neorl::envs
