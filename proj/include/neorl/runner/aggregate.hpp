#pragma once

#include "neorl/runner/run_log.hpp"

#include <vector>

namespace neorl::runner {

// Per-step mean and standard error across seeds. Standard error is the
// sample standard deviation (n - 1 denominator) over sqrt(n); a single seed
// gives zero. Steps beyond the shortest (failed, truncated) log are dropped.
struct AggregateCurve {
  std::vector<double> mean;
  std::vector<double> stderr_;
};

struct Aggregate {
  std::size_t seeds = 0;
  std::size_t steps = 0;
  AggregateCurve avg_cost;
  AggregateCurve regret;
  AggregateCurve resets;  // cumulative reset count
};

Aggregate aggregate_seeds(const std::vector<RunLog>& logs);

// Mean and standard error of a set of scalars.
std::pair<double, double> mean_and_stderr(const std::vector<double>& values);

}  // namespace neorl::runner
