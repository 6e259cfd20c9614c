#pragma once

#include "neorl/gp/kernel.hpp"

#include <vector>

namespace neorl::gp {

// 1/2 log det(I + s^-2 K) for the columns of points (d x n).
double information_gain(const Eigen::MatrixXd& points, const KernelSpec& kernel, double noise_variance);

struct GreedySelection {
  std::vector<Eigen::Index> indices;  // in selection order
  std::vector<double> gains;          // cumulative information gain after each pick
  double total_gain() const { return gains.empty() ? 0.0 : gains.back(); }
};

// Greedy maximization of the information gain over subsets of at most
// `count` candidates. Each step adds the candidate with the largest posterior
// variance given the points already chosen (ties resolve to the lowest index),
// which is the candidate with the largest marginal gain 1/2 ln(1 + s^-2 var).
// Stops early once every remaining candidate has variance below min_variance.
GreedySelection greedy_select(const Eigen::MatrixXd& candidates, Eigen::Index count,
                              const KernelSpec& kernel, double noise_variance,
                              double min_variance = 0.0);

double greedy_max_info_gain(const Eigen::MatrixXd& candidates, Eigen::Index count,
                            const KernelSpec& kernel, double noise_variance);

}  // namespace neorl::gp
