#include "neorl/runner/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace neorl::runner {

void EpisodeSchedule::validate() const {
  if (horizon < 1) {
    throw std::invalid_argument(kind == Kind::Fixed ? "schedule: H must be >= 1" : "schedule: H0 must be >= 1");
  }
}

long compute_H0(double c_upper, double c_lower, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("compute_H0: gamma must lie in (0, 1)");
  if (!(c_lower > 0.0)) throw std::invalid_argument("compute_H0: C_l must be positive");
  if (!(c_upper > c_lower)) throw std::invalid_argument("compute_H0: C_u must exceed C_l");
  const double log_ratio = std::log(c_upper / c_lower);
  const double log_inv_gamma = -std::log(gamma);
  long h = static_cast<long>(std::floor(log_ratio / log_inv_gamma)) + 1;
  h = std::max(h, 1L);
  // Guard the strict inequality against rounding in the quotient.
  while (static_cast<double>(h) * log_inv_gamma <= log_ratio) ++h;
  while (h > 1 && static_cast<double>(h - 1) * log_inv_gamma > log_ratio) --h;
  return h;
}

std::vector<long> doubling_schedule(long h0, long total_steps) {
  if (h0 < 1) throw std::invalid_argument("doubling_schedule: H0 must be >= 1");
  if (total_steps < 1) throw std::invalid_argument("doubling_schedule: T must be >= 1");
  std::vector<long> out;
  long remaining = total_steps;
  long h = h0;
  while (remaining > 0) {
    const long len = std::min(h, remaining);
    out.push_back(len);
    remaining -= len;
    if (h <= total_steps) h *= 2;
  }
  return out;
}

std::vector<long> refit_boundaries(const EpisodeSchedule& schedule, long total_steps) {
  schedule.validate();
  std::vector<long> out;
  if (schedule.kind == EpisodeSchedule::Kind::Fixed) {
    for (long t = schedule.horizon; t <= total_steps; t += schedule.horizon) out.push_back(t);
    return out;
  }
  long acc = 0;
  for (long len : doubling_schedule(schedule.horizon, total_steps)) out.push_back(acc += len);
  return out;
}

}  // namespace neorl::runner
