#include "neorl/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>

namespace neorl::envs {

namespace {

EnvSpec pendulum_spec(const Pendulum::Params& p) {
  EnvSpec s;
  s.name = "pendulum";
  s.state_dim = 3;
  s.control_dim = 1;
  s.u_min = Eigen::VectorXd::Constant(1, -p.max_torque);
  s.u_max = Eigen::VectorXd::Constant(1, p.max_torque);
  s.dt = p.dt;
  s.action_repeat = 1;
  s.noise_std = Eigen::VectorXd::Constant(3, 1e-3);
  s.initial_state = Pendulum::from_angle(M_PI, 0.0);
  return s;
}

}  // namespace

Pendulum::Pendulum() : Pendulum(Params{}) {}

Pendulum::Pendulum(Params p) : Environment(pendulum_spec(p)), p_(p) {}

double Pendulum::angle(const StateVector& x) { return std::atan2(x[1], x[0]); }

StateVector Pendulum::from_angle(double theta, double theta_dot) {
  StateVector x(3);
  x << std::cos(theta), std::sin(theta), theta_dot;
  return x;
}

double Pendulum::energy(const StateVector& x) const {
  const double inertia = p_.mass * p_.length * p_.length / 3.0;
  return 0.5 * inertia * x[2] * x[2] + p_.mass * p_.gravity * 0.5 * p_.length * std::cos(angle(x));
}

StateVector Pendulum::dynamics(const StateVector& x, const ControlVector& u) const {
  const double torque = std::clamp(u[0], -p_.max_torque, p_.max_torque);
  const double g_term = 3.0 * p_.gravity / (2.0 * p_.length);
  const double u_term = 3.0 / (p_.mass * p_.length * p_.length) * torque;
  auto accel = [&](double th, double thdot) {
    return g_term * std::sin(th) + u_term - p_.damping * thdot;
  };

  double th = angle(x);
  double thdot = x[2];
  if (p_.integrator == Integrator::SemiImplicitEuler) {
    thdot = std::clamp(thdot + accel(th, thdot) * p_.dt, -p_.max_speed, p_.max_speed);
    th += thdot * p_.dt;
  } else {
    const double h = p_.dt / p_.rk4_substeps;
    for (int i = 0; i < p_.rk4_substeps; ++i) {
      const double k1t = thdot, k1w = accel(th, thdot);
      const double k2t = thdot + 0.5 * h * k1w, k2w = accel(th + 0.5 * h * k1t, k2t);
      const double k3t = thdot + 0.5 * h * k2w, k3w = accel(th + 0.5 * h * k2t, k3t);
      const double k4t = thdot + h * k3w, k4w = accel(th + h * k3t, k4t);
      th += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
      thdot += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
    thdot = std::clamp(thdot, -p_.max_speed, p_.max_speed);
  }
  return from_angle(th, thdot);
}

double Pendulum::cost(const StateVector& x, const ControlVector& u) const {
  const double th = angle(x);
  const double velocity_term =
      p_.velocity_cost == VelocityCost::Squared ? 0.1 * x[2] * x[2] : 0.1 * x[2];
  return th * th + velocity_term + 0.1 * u[0] * u[0];
}

}  // namespace neorl::envs
