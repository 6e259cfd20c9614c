#pragma once

#include "neorl/core/dataset.hpp"
#include "neorl/gp/kernel.hpp"

#include <stdexcept>
#include <vector>

namespace neorl::gp {

// Diagonal jitter tried, in order, when K + sigma^2 I fails to factor.
inline const std::vector<double> kJitterLadder = {0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};

class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, std::vector<double> jitters)
      : std::runtime_error(what), jitters_tried(std::move(jitters)) {}
  std::vector<double> jitters_tried;
};

struct Prediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;
};

// Exact GP posterior with a kernel shared by all output dimensions:
//   mu_j(z)      = k_n(z)^T (K_n + s^2 I)^{-1} y_j
//   sigma_j^2(z) = k(z, z) - k_n(z)^T (K_n + s^2 I)^{-1} k_n(z)
// One Cholesky factor L of K_n + s^2 I serves every output; alpha holds one
// column of weights per output.
class GpPosterior {
 public:
  // inputs: d x n, targets: m x n (columns are samples).
  static GpPosterior fit(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                         const KernelSpec& kernel, double noise_variance);
  static GpPosterior prior(const KernelSpec& kernel, Eigen::Index input_dim,
                           Eigen::Index output_dim, double noise_variance);

  Prediction predict(const Eigen::VectorXd& z) const;
  // queries: d x B. mean: m x B, variance: B (shared across outputs).
  void predict_batch(const Eigen::MatrixXd& queries, Eigen::MatrixXd& mean,
                     Eigen::VectorXd& variance) const;

  // 1/2 log det(I + s^-2 K_n) of the training inputs.
  double information_gain() const;

  const KernelSpec& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  double jitter() const { return jitter_; }
  Eigen::Index size() const { return inputs_.cols(); }
  Eigen::Index input_dim() const { return inputs_.rows(); }
  Eigen::Index output_dim() const { return output_dim_; }
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::MatrixXd& cholesky_factor() const { return chol_; }
  const Eigen::MatrixXd& weights() const { return alpha_; }

 private:
  KernelSpec kernel_;
  double noise_variance_ = 1.0;
  double jitter_ = 0.0;
  Eigen::Index output_dim_ = 0;
  Eigen::MatrixXd inputs_;  // d x n
  Eigen::MatrixXd chol_;    // n x n, lower
  Eigen::MatrixXd alpha_;   // n x m
};

// Lower Cholesky factor of a + jitter I, escalating along kJitterLadder
// until it succeeds.
Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& a, double& jitter_used);

// GP on z = [x; u] with absolute (x') or delta (x' - x) targets, no rescaling.
GpPosterior fit_posterior(const TransitionDataset& ds, const KernelSpec& kernel,
                          double noise_variance, bool delta_targets = false);

}  // namespace neorl::gp
