#include "neorl/gp/information_gain.hpp"

#include "neorl/gp/posterior.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace neorl::gp {

double information_gain(const Eigen::MatrixXd& points, const KernelSpec& kernel, double noise_variance) {
  if (!(noise_variance > 0.0)) throw std::invalid_argument("information_gain: noise variance must be positive");
  const Eigen::Index n = points.cols();
  if (n == 0) return 0.0;
  Eigen::MatrixXd a = kernel_matrix(kernel, points, points) / noise_variance;
  a.diagonal().array() += 1.0;
  double jitter = 0.0;
  const Eigen::MatrixXd l = cholesky_with_jitter(a, jitter);
  return l.diagonal().array().log().sum();
}

GreedySelection greedy_select(const Eigen::MatrixXd& candidates, Eigen::Index count,
                              const KernelSpec& kernel, double noise_variance, double min_variance) {
  if (!(noise_variance > 0.0)) throw std::invalid_argument("greedy_select: noise variance must be positive");
  const Eigen::Index n = candidates.cols();
  count = std::min(count, n);
  GreedySelection out;
  if (count <= 0) return out;

  Eigen::VectorXd residual = kernel_diag(kernel, candidates);
  // Column t holds cov(z_i, p_t | p_0..p_{t-1}) / sqrt(var(p_t) + s^2).
  Eigen::MatrixXd factor(n, count);
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  double gain = 0.0;
  for (Eigen::Index t = 0; t < count; ++t) {
    Eigen::Index best = -1;
    double best_var = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!chosen[static_cast<std::size_t>(i)] && residual[i] > best_var) {
        best_var = residual[i];
        best = i;
      }
    }
    if (best < 0 || best_var < min_variance) break;
    best_var = std::max(best_var, 0.0);
    chosen[static_cast<std::size_t>(best)] = 1;
    gain += 0.5 * std::log1p(best_var / noise_variance);
    out.indices.push_back(best);
    out.gains.push_back(gain);

    Eigen::VectorXd cov = kernel_matrix(kernel, candidates, candidates.col(best));
    if (t > 0) cov.noalias() -= factor.leftCols(t) * factor.row(best).head(t).transpose();
    factor.col(t) = cov / std::sqrt(best_var + noise_variance);
    residual -= factor.col(t).cwiseAbs2();
  }
  return out;
}

double greedy_max_info_gain(const Eigen::MatrixXd& candidates, Eigen::Index count,
                            const KernelSpec& kernel, double noise_variance) {
  if (candidates.cols() == 0) throw std::invalid_argument("greedy_max_info_gain: empty candidate set");
  if (count > candidates.cols()) {
    throw std::invalid_argument("greedy_max_info_gain: subset size exceeds candidate count");
  }
  return greedy_select(candidates, count, kernel, noise_variance).total_gain();
}

}  // namespace neorl::gp
