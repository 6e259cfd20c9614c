#pragma once

#include "neorl/envs/environment.hpp"

namespace neorl::envs {

// Continuous-action car on a hill. State is (position, velocity).
class MountainCar : public Environment {
 public:
  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.6;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr double kPower = 0.0015;
  static constexpr double kGravity = 0.0025;
  static constexpr double kGoalPosition = 0.45;

  MountainCar();

  StateVector dynamics(const StateVector& x, const ControlVector& u) const override;
  // 0.1 u^2 + 100 * 1{position < goal}
  double cost(const StateVector& x, const ControlVector& u) const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<MountainCar>(*this); }

  static bool in_goal(const StateVector& x) { return x[0] >= kGoalPosition; }
};

}  // namespace neorl::envs
