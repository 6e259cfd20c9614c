#include "neorl/theory/lyapunov.hpp"

#include <cmath>
#include <stdexcept>

namespace neorl::theory {

bool is_class_k_on_grid(const ScalarFn& f, double grid_max, int points) {
  if (!f || points < 2 || !(grid_max > 0.0)) return false;
  if (std::abs(f(0.0)) > 1e-12) return false;
  double prev = f(0.0);
  for (int i = 1; i < points; ++i) {
    const double v = f(grid_max * static_cast<double>(i) / static_cast<double>(points - 1));
    if (!std::isfinite(v) || v < prev) return false;
    prev = v;
  }
  return true;
}

void LyapunovSpec::validate() const {
  if (!V) throw std::invalid_argument("LyapunovSpec: V is not set");
  if (!(c_lower > 0.0) || !(c_upper > c_lower)) {
    throw std::invalid_argument("LyapunovSpec: need 0 < C_l < C_u");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("LyapunovSpec: gamma must lie in (0, 1)");
  if (!(K >= 0.0) || !std::isfinite(K)) throw std::invalid_argument("LyapunovSpec: K must be finite and >= 0");
  if (xi && !is_class_k_on_grid(xi)) throw std::invalid_argument("LyapunovSpec: xi is not class-K on the grid");
  if (kappa && !is_class_k_on_grid(kappa)) {
    throw std::invalid_argument("LyapunovSpec: kappa is not class-K on the grid");
  }
}

double evaluate_lyapunov(const LyapunovFn& V, const StateVector& x) {
  const double v = V(x);
  if (!std::isfinite(v) || v < 0.0) {
    throw std::domain_error("Lyapunov function returned a negative or non-finite value");
  }
  return v;
}

LyapunovBoundsReport check_lyapunov_bounds(const LyapunovSpec& spec, const std::vector<StateVector>& states,
                                           double tolerance) {
  spec.validate();
  LyapunovBoundsReport out;
  std::vector<double> values;
  values.reserve(states.size());
  for (const auto& x : states) {
    const double v = evaluate_lyapunov(spec.V, x);
    values.push_back(v);
    if (spec.xi) {
      const double r = spec.xi(x.norm());
      ++out.states_tested;
      if (v < spec.c_lower * r - tolerance || v > spec.c_upper * r + tolerance) ++out.bound_violations;
    }
  }
  if (spec.kappa) {
    for (std::size_t i = 1; i < states.size(); ++i) {
      ++out.pairs_tested;
      const double bound = spec.kappa((states[i] - states[i - 1]).norm());
      if (std::abs(values[i] - values[i - 1]) > bound + tolerance) ++out.continuity_violations;
    }
  }
  return out;
}

}  // namespace neorl::theory
