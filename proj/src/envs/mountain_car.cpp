#include "neorl/envs/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace neorl::envs {

namespace {

EnvSpec mountain_car_spec() {
  EnvSpec s;
  s.name = "mountaincar";
  s.state_dim = 2;
  s.control_dim = 1;
  s.u_min = Eigen::VectorXd::Constant(1, -1.0);
  s.u_max = Eigen::VectorXd::Constant(1, 1.0);
  s.dt = 1.0;
  s.action_repeat = 2;
  s.noise_std = Eigen::VectorXd::Constant(2, 1e-3);
  s.initial_state = Eigen::Vector2d(-0.5, 0.0);
  return s;
}

}  // namespace

MountainCar::MountainCar() : Environment(mountain_car_spec()) {}

StateVector MountainCar::dynamics(const StateVector& x, const ControlVector& u) const {
  const double force = std::clamp(u[0], -1.0, 1.0);
  double position = x[0];
  double velocity = x[1] + force * kPower - kGravity * std::cos(3.0 * position);
  velocity = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
  position = std::clamp(position + velocity, kMinPosition, kMaxPosition);
  if (position == kMinPosition && velocity < 0.0) velocity = 0.0;
  return Eigen::Vector2d(position, velocity);
}

double MountainCar::cost(const StateVector& x, const ControlVector& u) const {
  return 0.1 * u[0] * u[0] + (in_goal(x) ? 0.0 : 100.0);
}

}  // namespace neorl::envs
