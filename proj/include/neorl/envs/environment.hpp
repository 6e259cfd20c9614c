#pragma once

#include "neorl/core/random.hpp"
#include "neorl/core/types.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace neorl::envs {

struct EnvSpec {
  std::string name;
  int state_dim = 1;
  int control_dim = 1;
  Eigen::VectorXd u_min;
  Eigen::VectorXd u_max;
  double dt = 1.0;
  int action_repeat = 1;
  Eigen::VectorXd noise_std;  // per state dimension
  StateVector initial_state;

  void validate() const;
};

struct ResetPolicy {
  enum class Mode { Never, OnPredicate };
  Mode mode = Mode::Never;
  std::function<bool(const StateVector&)> predicate;

  static ResetPolicy never() { return {}; }
  static ResetPolicy on(std::function<bool(const StateVector&)> pred) {
    return {Mode::OnPredicate, std::move(pred)};
  }
};

struct ResetResult {
  StateVector state;
  bool did_reset = false;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, StateVector s) : std::runtime_error(what), state(std::move(s)) {}
  StateVector state;
};

// Ground-truth system x_{t+1} = f*(x_t, u_t) + w_t with w_t ~ N(0, diag(noise_std^2)).
// One call of dynamics() is a single base integration step of length dt;
// an environment step applies it action_repeat times.
class Environment {
 public:
  explicit Environment(EnvSpec spec);
  virtual ~Environment() = default;

  const EnvSpec& spec() const { return spec_; }
  void set_noise_std(double sigma);
  void set_action_repeat(int repeat);

  const ResetPolicy& reset_policy() const { return reset_policy_; }
  void set_reset_policy(ResetPolicy policy) { reset_policy_ = std::move(policy); }
  // Environment-specific "agent needs help" predicate, if the task has one.
  virtual ResetPolicy triggering_reset_policy() const { return ResetPolicy::never(); }

  virtual StateVector dynamics(const StateVector& x, const ControlVector& u) const = 0;
  virtual double cost(const StateVector& x, const ControlVector& u) const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  ControlVector clip(const ControlVector& u) const;
  // f*(x, u): clipped control, action_repeat base steps, no noise.
  StateVector deterministic_step(const StateVector& x, const ControlVector& u) const;
  StateVector true_step(const StateVector& x, const ControlVector& u, RandomStream& rng) const;
  ResetResult reset_if_triggered(const StateVector& x, RandomStream& rng) const;

 protected:
  EnvSpec spec_;
  ResetPolicy reset_policy_;
};

ResetResult reset_if_triggered(const ResetPolicy& policy, const StateVector& x,
                               const StateVector& initial_state, const Eigen::VectorXd& noise_std,
                               RandomStream& rng);

}  // namespace neorl::envs
