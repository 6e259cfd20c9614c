#include "neorl/theory/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace neorl::theory {

double gamma_T_asymptote(gp::KernelFamily family, double T, int d) {
  if (!(T >= 2.0)) throw std::invalid_argument("gamma_T_asymptote: T must be >= 2");
  if (d < 1) throw std::invalid_argument("gamma_T_asymptote: d must be >= 1");
  const double log_t = std::log(T);
  const double dd = static_cast<double>(d);
  double nu = 0.0;
  switch (family) {
    case gp::KernelFamily::Linear:
      return dd * log_t;
    case gp::KernelFamily::Rbf:
      return std::pow(log_t, dd + 1.0);
    case gp::KernelFamily::Matern12: nu = 0.5; break;
    case gp::KernelFamily::Matern32: nu = 1.5; break;
    case gp::KernelFamily::Matern52: nu = 2.5; break;
    default:
      throw std::invalid_argument("gamma_T_asymptote: unsupported kernel family");
  }
  const double denom = 2.0 * nu + dd;
  return std::pow(T, dd / denom) * std::pow(log_t, 2.0 * nu / denom);
}

MomentBoundsReport check_moment_bounds(const std::vector<runner::RunLog>& logs, const LyapunovSpec& spec, long H0) {
  if (!(spec.gamma < 1.0)) throw std::invalid_argument("check_moment_bounds: gamma must be < 1");
  spec.validate();
  if (logs.size() < 2) throw std::invalid_argument("check_moment_bounds: need at least 2 seeds");
  if (H0 < 1) throw std::invalid_argument("check_moment_bounds: H0 must be >= 1");

  MomentBoundsReport out;
  out.seeds = static_cast<long>(logs.size());
  out.nu = spec.c_upper / spec.c_lower * std::pow(spec.gamma, static_cast<double>(H0));
  out.nu_below_one = out.nu < 1.0;
  out.worst_margin = -std::numeric_limits<double>::infinity();

  // values[seed][(episode, k)] = V(x_k^n)
  std::map<std::pair<long, long>, std::vector<double>> cells;
  for (const auto& log : logs) {
    if (log.states.size() != log.steps.size()) {
      throw std::invalid_argument("check_moment_bounds: log has no state column");
    }
    long offset = 0;
    for (std::size_t t = 0; t < log.steps.size(); ++t) {
      if (t > 0 && log.steps[t].episode != log.steps[t - 1].episode) offset = 0;
      cells[{log.steps[t].episode, offset}].push_back(evaluate_lyapunov(spec.V, log.states[t]));
      ++offset;
    }
  }

  const double k_term = spec.K / (1.0 - spec.gamma);
  std::map<long, std::pair<double, long>> pooled;
  for (const auto& [key, values] : cells) {
    const auto& [episode, k] = key;
    const auto start = cells.find({episode, 0});
    if (values.size() < 2 || start == cells.end() || start->second.size() != values.size()) continue;
    const double n = static_cast<double>(values.size());
    double mean = 0.0, mean0 = 0.0;
    for (double v : values) mean += v;
    for (double v : start->second) mean0 += v;
    mean /= n;
    mean0 /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    const double envelope = std::pow(spec.gamma, static_cast<double>(k)) * mean0 + k_term;
    const double margin = mean - envelope;
    ++out.checks;
    if (margin > 3.0 * se) ++out.violations;
    out.worst_margin = std::max(out.worst_margin, margin);
    if (mean0 > 0.0) {
      auto& [sum, count] = pooled[k];
      sum += mean / mean0;
      ++count;
    }
  }
  for (const auto& [k, acc] : pooled) {
    if (static_cast<std::size_t>(k) != out.mean_by_offset.size()) break;
    out.mean_by_offset.push_back(acc.first / static_cast<double>(acc.second));
  }
  return out;
}

SublinearityReport check_sublinearity(const std::vector<double>& regret) {
  const long T = static_cast<long>(regret.size());
  if (T < 8) throw std::invalid_argument("check_sublinearity: need at least 8 steps for four dyadic checkpoints");
  SublinearityReport out;
  out.checkpoints = {T / 8, T / 4, T / 2, T};
  for (long t : out.checkpoints) out.ratios.push_back(regret[static_cast<std::size_t>(t - 1)] / static_cast<double>(t));
  out.sublinear = true;
  for (std::size_t i = 1; i < out.ratios.size(); ++i) {
    if (!(out.ratios[i] < out.ratios[i - 1])) out.sublinear = false;
  }
  return out;
}

}  // namespace neorl::theory
