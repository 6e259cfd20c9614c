#include "neorl/theory/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace neorl::theory {

DriftReport check_drift(const StepFn& step, const PolicyFn& policy, const LyapunovSpec& spec,
                        const std::vector<StateVector>& states, int mc_per_state, RandomStream rng) {
  spec.validate();
  if (mc_per_state < 1) throw std::invalid_argument("check_drift: mc_per_state must be >= 1");
  if (states.empty()) throw std::invalid_argument("check_drift: no states");

  DriftReport out;
  out.states_tested = static_cast<long>(states.size());
  out.mc_per_state = mc_per_state;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  out.fitted_K = 0.0;
  long violations = 0;
  const RandomStream base = rng.split("drift");

  for (std::size_t i = 0; i < states.size(); ++i) {
    RandomStream local = base.split(static_cast<std::uint64_t>(i));
    const StateVector& x = states[i];
    const double vx = evaluate_lyapunov(spec.V, x);
    const ControlVector u = policy(x);
    // Welford accumulation of V(x+)
    double mean = 0.0, m2 = 0.0;
    for (int j = 0; j < mc_per_state; ++j) {
      const double v = evaluate_lyapunov(spec.V, step(x, u, local));
      const double delta = v - mean;
      mean += delta / static_cast<double>(j + 1);
      m2 += delta * (v - mean);
    }
    const double se = mc_per_state > 1 ? std::sqrt(m2 / (mc_per_state - 1) / mc_per_state) : 0.0;
    const double tol = kDriftTolerance * se;
    const double margin = mean - (spec.gamma * vx + spec.K);
    if (margin > tol) ++violations;
    out.worst_margin = std::max(out.worst_margin, margin);
    out.half_width = std::max(out.half_width, tol);
    out.fitted_K = std::max(out.fitted_K, mean - spec.gamma * vx - tol);
    out.expected_next.push_back(mean);
    out.current.push_back(vx);
    out.tolerance.push_back(tol);
  }
  out.violation_fraction = static_cast<double>(violations) / static_cast<double>(states.size());
  return out;
}

DriftReport check_drift(const StepFn& step, const PolicyFn& policy, const LyapunovSpec& spec,
                        const StateSampler& sampler, int state_samples, int mc_per_state, RandomStream rng) {
  if (state_samples < 1) throw std::invalid_argument("check_drift: state_samples must be >= 1");
  RandomStream srng = rng.split("states");
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(state_samples));
  for (int i = 0; i < state_samples; ++i) states.push_back(sampler(srng));
  return check_drift(step, policy, spec, states, mc_per_state, rng);
}

double violation_fraction_with_K(const DriftReport& report, double gamma, double K) {
  if (report.current.empty()) return 0.0;
  long violations = 0;
  for (std::size_t i = 0; i < report.current.size(); ++i) {
    // Same operation order as fitted_K, so K = fitted_K is never flagged.
    if (report.expected_next[i] - gamma * report.current[i] - report.tolerance[i] > K) ++violations;
  }
  return static_cast<double>(violations) / static_cast<double>(report.current.size());
}

namespace {

void require_bounded(const ControlVector& u, double u_max) {
  if (!all_finite(u) || u.cwiseAbs().maxCoeff() > u_max + 1e-12) {
    throw std::invalid_argument("check_energy_transfer: policy output exceeds the control bound");
  }
}

}  // namespace

EnergyTransferReport check_energy_transfer(const StepFn& step, const MeanStepFn& f_star, const PolicyFn& policy_s,
                                           const std::vector<PolicyFn>& other_policies, const LyapunovSpec& spec,
                                           double u_max, const StateSampler& sampler,
                                           const EnergyTransferOptions& options, RandomStream rng) {
  spec.validate();
  if (!spec.kappa) throw std::invalid_argument("check_energy_transfer: spec needs kappa");
  if (!(u_max >= 0.0)) throw std::invalid_argument("check_energy_transfer: u_max must be >= 0");
  if (options.state_samples < 1) throw std::invalid_argument("check_energy_transfer: need state samples");

  RandomStream srng = rng.split("states");
  std::vector<StateVector> states;
  for (int i = 0; i < options.state_samples; ++i) states.push_back(sampler(srng));

  const Eigen::Index d_u = policy_s(states.front()).size();
  for (const auto& x : states) {
    require_bounded(policy_s(x), u_max);
    for (const auto& p : other_policies) require_bounded(p(x), u_max);
  }

  // Modulus of continuity of f* in the control, at distance up to 2 u_max:
  // opposite corners of the box plus random pairs.
  EnergyTransferReport out;
  RandomStream crng = rng.split("controls");
  const Eigen::VectorXd lo = Eigen::VectorXd::Constant(d_u, -u_max);
  const Eigen::VectorXd hi = Eigen::VectorXd::Constant(d_u, u_max);
  for (const auto& x : states) {
    out.kappa_f = std::max(out.kappa_f, (f_star(x, hi) - f_star(x, lo)).norm());
    for (int j = 0; j < options.control_pairs; ++j) {
      const ControlVector a = u_max > 0.0 ? crng.uniform_vector(lo, hi) : lo;
      const ControlVector b = u_max > 0.0 ? crng.uniform_vector(lo, hi) : lo;
      out.kappa_f = std::max(out.kappa_f, (f_star(x, a) - f_star(x, b)).norm());
    }
  }
  out.inflation = spec.kappa(out.kappa_f);

  out.base = check_drift(step, policy_s, spec, states, options.mc_per_state, rng.split("base"));
  out.base_K = options.fit_base_K ? out.base.fitted_K : spec.K;
  out.K_tilde = out.base_K + out.inflation;

  LyapunovSpec inflated = spec;
  inflated.K = out.K_tilde;
  for (std::size_t i = 0; i < other_policies.size(); ++i) {
    DriftReport r = check_drift(step, other_policies[i], inflated, states, options.mc_per_state,
                                rng.split("other", i));
    const bool ok = r.violation_fraction <= options.allowed_violation_fraction;
    out.holds.push_back(ok);
    out.all_hold = out.all_hold && ok;
    out.others.push_back(std::move(r));
  }
  return out;
}

}  // namespace neorl::theory
