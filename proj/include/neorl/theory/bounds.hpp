#pragma once

#include "neorl/gp/kernel.hpp"
#include "neorl/runner/run_log.hpp"
#include "neorl/theory/lyapunov.hpp"

#include <vector>

namespace neorl::theory {

// Growth rate of the maximum information gain with unit leading constant:
//   Linear  d ln T,   RBF  (ln T)^(d+1),
//   Matern  T^(d/(2nu+d)) (ln T)^(2nu/(2nu+d)).
double gamma_T_asymptote(gp::KernelFamily family, double T, int d);

struct MomentBoundsReport {
  long seeds = 0;
  long checks = 0;  // (episode, offset) pairs tested
  long violations = 0;
  double worst_margin = 0.0;  // max of mean V_k - envelope_k
  double nu = 0.0;            // (C_u / C_l) gamma^H0
  bool nu_below_one = false;
  // Mean of V across seeds per within-episode offset, pooled over episodes
  // after normalising by the episode's starting value; diagnostic only.
  std::vector<double> mean_by_offset;
};

// For every episode n and offset k, checks that the across-seed mean of
// V(x_k^n) is within three standard errors of gamma^k mean V(x_0^n) + K/(1-gamma).
// Episodes are read from the log's episode column; states from its state column.
MomentBoundsReport check_moment_bounds(const std::vector<runner::RunLog>& logs, const LyapunovSpec& spec, long H0);

struct SublinearityReport {
  std::vector<long> checkpoints;  // T/8, T/4, T/2, T
  std::vector<double> ratios;     // R_t / t
  bool sublinear = false;         // ratios strictly decreasing
};

// regret[t - 1] holds R_t.
SublinearityReport check_sublinearity(const std::vector<double>& regret);

}  // namespace neorl::theory
