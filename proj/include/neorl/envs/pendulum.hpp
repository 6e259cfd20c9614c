#pragma once

#include "neorl/envs/environment.hpp"

namespace neorl::envs {

// Swing-up pendulum. State is (cos theta, sin theta, theta_dot) with theta = 0
// upright; the environment starts hanging down.
class Pendulum : public Environment {
 public:
  enum class Integrator { SemiImplicitEuler, Rk4 };
  enum class VelocityCost { Squared, Literal };

  struct Params {
    double gravity = 10.0;
    double mass = 1.0;
    double length = 1.0;
    double max_speed = 8.0;
    double max_torque = 2.0;
    double dt = 0.05;
    double damping = 0.0;  // viscous, per unit inertia
    Integrator integrator = Integrator::SemiImplicitEuler;
    int rk4_substeps = 10;
    VelocityCost velocity_cost = VelocityCost::Squared;
  };

  Pendulum();
  explicit Pendulum(Params p);

  StateVector dynamics(const StateVector& x, const ControlVector& u) const override;
  double cost(const StateVector& x, const ControlVector& u) const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<Pendulum>(*this); }

  const Params& params() const { return p_; }
  static double angle(const StateVector& x);
  static StateVector from_angle(double theta, double theta_dot);
  // Mechanical energy of the rod: I/2 thdot^2 + m g (l/2) cos theta.
  double energy(const StateVector& x) const;

 private:
  Params p_;
};

}  // namespace neorl::envs
