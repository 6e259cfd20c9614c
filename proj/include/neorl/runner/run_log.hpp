#pragma once

#include "neorl/core/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace neorl::runner {

struct StepRecord {
  long t = 0;
  double cost = 0.0;
  double cum_cost = 0.0;
  double regret = 0.0;    // sum_{s<=t} (c_s - A*)
  double avg_cost = 0.0;  // cum_cost / (t + 1)
  long episode = 0;
  bool did_reset = false;
};

struct RefitRecord {
  long index = 0;
  long after_step = 0;
  std::size_t dataset_size = 0;
  std::size_t model_points = 0;
  double information_gain = 0.0;
  double beta = 0.0;
  double wall_seconds = 0.0;
};

struct RunLog {
  std::string env;
  std::string agent;
  std::uint64_t seed = 0;
  double a_star = 0.0;
  std::string a_star_source = "config";
  std::vector<StepRecord> steps;
  std::vector<RefitRecord> refits;
  std::vector<StateVector> states;  // x_t at which each step's action was taken
  long reset_count = 0;
  long non_finite_particles = 0;
  bool failed = false;
  std::string failure;

  // Appends the next step, maintaining the cumulative columns.
  void record(double cost, long episode, bool did_reset);
};

}  // namespace neorl::runner
