#include "neorl/runner/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace neorl::runner {

std::pair<double, double> mean_and_stderr(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean_and_stderr: no values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

Aggregate aggregate_seeds(const std::vector<RunLog>& logs) {
  if (logs.empty()) throw std::invalid_argument("aggregate_seeds: no runs");
  Aggregate out;
  out.seeds = logs.size();
  out.steps = logs.front().steps.size();
  for (const auto& log : logs) out.steps = std::min(out.steps, log.steps.size());

  std::vector<std::vector<long>> reset_counts(logs.size());
  for (std::size_t s = 0; s < logs.size(); ++s) {
    long count = 0;
    reset_counts[s].reserve(out.steps);
    for (std::size_t t = 0; t < out.steps; ++t) {
      if (logs[s].steps[t].did_reset) ++count;
      reset_counts[s].push_back(count);
    }
  }

  std::vector<double> column(logs.size());
  auto fill = [&](AggregateCurve& curve, auto value_at) {
    curve.mean.resize(out.steps);
    curve.stderr_.resize(out.steps);
    for (std::size_t t = 0; t < out.steps; ++t) {
      for (std::size_t s = 0; s < logs.size(); ++s) column[s] = value_at(s, t);
      std::tie(curve.mean[t], curve.stderr_[t]) = mean_and_stderr(column);
    }
  };
  fill(out.avg_cost, [&](std::size_t s, std::size_t t) { return logs[s].steps[t].avg_cost; });
  fill(out.regret, [&](std::size_t s, std::size_t t) { return logs[s].steps[t].regret; });
  fill(out.resets, [&](std::size_t s, std::size_t t) { return static_cast<double>(reset_counts[s][t]); });
  return out;
}

}  // namespace neorl::runner
