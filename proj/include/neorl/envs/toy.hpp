#pragma once

#include "neorl/envs/environment.hpp"

namespace neorl::envs {

// Scalar system with a constant running cost; x' = decay * x + u.
class ConstantCostEnv : public Environment {
 public:
  explicit ConstantCostEnv(double cost_value = 1.0, double decay = 0.5);

  StateVector dynamics(const StateVector& x, const ControlVector& u) const override;
  double cost(const StateVector&, const ControlVector&) const override { return cost_value_; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<ConstantCostEnv>(*this); }

 private:
  double cost_value_;
  double decay_;
};

// x' = a x + b u, cost q x^2 + r u^2. With noise std s the optimal average
// cost is s^2 P, P the stabilizing root of the scalar Riccati equation.
class ScalarLinearEnv : public Environment {
 public:
  struct Params {
    double a = 1.0;
    double b = 1.0;
    double q = 1.0;
    double r = 1.0;
    double u_max = 5.0;
    double noise_std = 0.1;
    double initial_state = 1.0;
  };

  ScalarLinearEnv();
  explicit ScalarLinearEnv(Params p);

  StateVector dynamics(const StateVector& x, const ControlVector& u) const override;
  double cost(const StateVector& x, const ControlVector& u) const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<ScalarLinearEnv>(*this); }

  const Params& params() const { return p_; }

 private:
  Params p_;
};

}  // namespace neorl::envs
