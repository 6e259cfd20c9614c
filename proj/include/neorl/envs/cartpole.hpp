#pragma once

#include "neorl/envs/environment.hpp"

namespace neorl::envs {

// Planar cart-pole, Euler-integrated at dt = 0.01 per base step. State is
// (x, cos theta, sin theta, x_dot, theta_dot) with theta = 0 upright; the
// control in [-1, 1] scales a force of force_mag newtons.
class CartPole : public Environment {
 public:
  enum class Task { SwingUp, Balance };

  struct Params {
    double gravity = 9.8;
    double cart_mass = 1.0;
    double pole_mass = 0.1;
    double half_length = 0.5;
    double force_mag = 10.0;
    double dt = 0.01;
    double target_position = 0.0;
  };

  explicit CartPole(Task task = Task::SwingUp);
  CartPole(Task task, Params p);

  StateVector dynamics(const StateVector& x, const ControlVector& u) const override;
  // |x - x_target|^2 + 10 (cos theta - 1)^2 + 0.2 |u|^2
  double cost(const StateVector& x, const ControlVector& u) const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<CartPole>(*this); }
  // The pole counts as dropped once it falls below horizontal. Only the
  // balance task enables this policy by default.
  ResetPolicy triggering_reset_policy() const override;

  static bool pole_dropped(const StateVector& x) { return x[1] < 0.0; }
  static StateVector make_state(double position, double theta, double velocity, double theta_dot);

  Task task() const { return task_; }

 private:
  Task task_;
  Params p_;
};

}  // namespace neorl::envs
