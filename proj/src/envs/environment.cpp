#include "neorl/envs/environment.hpp"

#include <sstream>

namespace neorl::envs {

void EnvSpec::validate() const {
  if (state_dim < 1 || control_dim < 1) throw std::invalid_argument(name + ": dimensions must be positive");
  require_dim(u_min.size(), control_dim, name + " u_min");
  require_dim(u_max.size(), control_dim, name + " u_max");
  require_dim(noise_std.size(), state_dim, name + " noise_std");
  require_dim(initial_state.size(), state_dim, name + " initial_state");
  if (!(u_min.array() < u_max.array()).all()) throw std::invalid_argument(name + ": u_min must be < u_max");
  if (action_repeat < 1) throw std::invalid_argument(name + ": action_repeat must be >= 1");
  if (!(noise_std.array() >= 0.0).all()) throw std::invalid_argument(name + ": noise_std must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument(name + ": dt must be positive");
}

Environment::Environment(EnvSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

void Environment::set_noise_std(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("noise_std must be >= 0");
  spec_.noise_std.setConstant(sigma);
}

void Environment::set_action_repeat(int repeat) {
  if (repeat < 1) throw std::invalid_argument("action_repeat must be >= 1");
  spec_.action_repeat = repeat;
}

ControlVector Environment::clip(const ControlVector& u) const {
  require_dim(u.size(), spec_.control_dim, spec_.name + " control");
  return u.cwiseMax(spec_.u_min).cwiseMin(spec_.u_max);
}

StateVector Environment::deterministic_step(const StateVector& x, const ControlVector& u) const {
  require_dim(x.size(), spec_.state_dim, spec_.name + " state");
  const ControlVector uc = clip(u);
  StateVector next = x;
  for (int i = 0; i < spec_.action_repeat; ++i) next = dynamics(next, uc);
  return next;
}

StateVector Environment::true_step(const StateVector& x, const ControlVector& u, RandomStream& rng) const {
  StateVector next = deterministic_step(x, u);
  for (Eigen::Index i = 0; i < next.size(); ++i) {
    if (spec_.noise_std[i] > 0.0) next[i] += spec_.noise_std[i] * rng.normal();
  }
  if (!next.allFinite()) {
    std::ostringstream msg;
    msg << spec_.name << ": non-finite state after step: [" << next.transpose() << "]";
    throw BlowUpError(msg.str(), next);
  }
  return next;
}

ResetResult Environment::reset_if_triggered(const StateVector& x, RandomStream& rng) const {
  return envs::reset_if_triggered(reset_policy_, x, spec_.initial_state, spec_.noise_std, rng);
}

ResetResult reset_if_triggered(const ResetPolicy& policy, const StateVector& x,
                               const StateVector& initial_state, const Eigen::VectorXd& noise_std,
                               RandomStream& rng) {
  if (policy.mode == ResetPolicy::Mode::Never || !policy.predicate || !policy.predicate(x)) {
    return {x, false};
  }
  StateVector s = initial_state;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (noise_std[i] > 0.0) s[i] += noise_std[i] * rng.normal();
  }
  return {s, true};
}

}  // namespace neorl::envs
