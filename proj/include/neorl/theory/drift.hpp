#pragma once

#include "neorl/theory/lyapunov.hpp"

#include <vector>

namespace neorl::theory {

// x+ ~ step(x, u): one draw of the stochastic transition.
using StepFn = std::function<StateVector(const StateVector&, const ControlVector&, RandomStream&)>;
// Noise-free transition f*(x, u).
using MeanStepFn = std::function<StateVector(const StateVector&, const ControlVector&)>;
using PolicyFn = std::function<ControlVector(const StateVector&)>;
using StateSampler = std::function<StateVector(RandomStream&)>;

inline constexpr double kDriftTolerance = 3.0;  // standard errors

struct DriftReport {
  long states_tested = 0;
  long mc_per_state = 0;
  double violation_fraction = 0.0;
  // max over states of E[V(x+)] - (gamma V(x) + K), Monte Carlo estimate
  double worst_margin = 0.0;
  // largest one-sided tolerance (3 standard errors) across states
  double half_width = 0.0;
  // smallest K for which no sampled state is flagged
  double fitted_K = 0.0;
  std::vector<double> expected_next;  // E[V(x+)] estimate per state
  std::vector<double> current;        // V(x) per state
  std::vector<double> tolerance;      // 3 standard errors per state
};

// Estimates E[V(x+)] under u = policy(x) with mc_per_state draws per state and
// flags a state when the estimate exceeds gamma V(x) + K by more than three
// standard errors. Each state uses its own substream, so the report does not
// depend on evaluation order.
DriftReport check_drift(const StepFn& step, const PolicyFn& policy, const LyapunovSpec& spec,
                        const std::vector<StateVector>& states, int mc_per_state, RandomStream rng);

DriftReport check_drift(const StepFn& step, const PolicyFn& policy, const LyapunovSpec& spec,
                        const StateSampler& sampler, int state_samples, int mc_per_state, RandomStream rng);

// Violation fraction of an existing report when gamma and K are replaced,
// with the same per-state tolerance.
double violation_fraction_with_K(const DriftReport& report, double gamma, double K);

struct EnergyTransferOptions {
  int state_samples = 200;
  int mc_per_state = 100;
  int control_pairs = 16;  // random control pairs per state for the modulus of f*
  bool fit_base_K = false;  // use the fitted K of policy_s instead of spec.K
  double allowed_violation_fraction = 0.05;
};

struct EnergyTransferReport {
  double base_K = 0.0;
  double kappa_f = 0.0;    // sampled sup |f*(x,u) - f*(x,u')| over |u - u'| <= 2 u_max
  double inflation = 0.0;  // kappa(kappa_f)
  double K_tilde = 0.0;
  DriftReport base;
  std::vector<DriftReport> others;
  std::vector<bool> holds;  // per other policy, against K_tilde
  bool all_hold = true;
};

// If V is a Lyapunov function for policy_s, it should satisfy the drift
// condition for any policy bounded by u_max with K replaced by
// K + kappa(kappa_f(2 u_max)). The modulus kappa_f is estimated from
// f* on the sampled states; policies returning controls outside the bound
// raise std::invalid_argument.
EnergyTransferReport check_energy_transfer(const StepFn& step, const MeanStepFn& f_star, const PolicyFn& policy_s,
                                           const std::vector<PolicyFn>& other_policies, const LyapunovSpec& spec,
                                           double u_max, const StateSampler& sampler,
                                           const EnergyTransferOptions& options, RandomStream rng);

}  // namespace neorl::theory
