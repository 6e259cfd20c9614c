#pragma once

#include <vector>

namespace neorl::runner {

struct EpisodeSchedule {
  enum class Kind { Doubling, Fixed };
  Kind kind = Kind::Fixed;
  long horizon = 10;  // H for Fixed, H0 for Doubling

  static EpisodeSchedule fixed(long h) { return {Kind::Fixed, h}; }
  static EpisodeSchedule doubling(long h0) { return {Kind::Doubling, h0}; }
  void validate() const;
};

// Smallest integer H0 >= 1 with H0 > log(C_u / C_l) / log(1 / gamma).
long compute_H0(double c_upper, double c_lower, double gamma);

// Episode lengths H0, 2 H0, 4 H0, ... with the last one truncated so the
// lengths sum to total_steps.
std::vector<long> doubling_schedule(long h0, long total_steps);

// Step counts (1-based) after which the model is refit.
std::vector<long> refit_boundaries(const EpisodeSchedule& schedule, long total_steps);

}  // namespace neorl::runner
