#pragma once

#include "neorl/core/random.hpp"
#include "neorl/core/types.hpp"

#include <functional>
#include <vector>

namespace neorl::theory {

using ScalarFn = std::function<double(double)>;
using LyapunovFn = std::function<double(const StateVector&)>;

// Candidate Lyapunov function with its bounding constants:
//   C_l xi(|x|) <= V(x) <= C_u xi(|x|),   |V(x) - V(x')| <= kappa(|x - x'|),
//   E[V(x+)] <= gamma V(x) + K.
struct LyapunovSpec {
  LyapunovFn V;
  double c_lower = 1.0;
  double c_upper = 2.0;
  ScalarFn xi;
  ScalarFn kappa;
  double gamma = 0.5;
  double K = 0.0;

  // Throws std::invalid_argument on C_u <= C_l, C_l <= 0, gamma outside (0, 1)
  // or K < 0. xi and kappa, when set, are checked on a grid.
  void validate() const;
};

// xi(0) = 0 and nondecreasing on [0, grid_max] at `points` grid nodes.
bool is_class_k_on_grid(const ScalarFn& f, double grid_max = 100.0, int points = 1001);

// Evaluates V and throws std::domain_error when the value is negative or not finite.
double evaluate_lyapunov(const LyapunovFn& V, const StateVector& x);

struct LyapunovBoundsReport {
  long states_tested = 0;
  long bound_violations = 0;       // sandwich inequality with xi
  long pairs_tested = 0;
  long continuity_violations = 0;  // kappa modulus
};

// Checks the sandwich bounds on each state and uniform continuity on all
// consecutive pairs of the given states.
LyapunovBoundsReport check_lyapunov_bounds(const LyapunovSpec& spec, const std::vector<StateVector>& states,
                                           double tolerance = 1e-12);

}  // namespace neorl::theory
