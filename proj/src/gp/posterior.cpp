#include "neorl/gp/posterior.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace neorl::gp {

Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& a, double& jitter_used) {
  std::vector<double> tried;
  for (double jitter : kJitterLadder) {
    tried.push_back(jitter);
    Eigen::MatrixXd m = a;
    m.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      jitter_used = jitter;
      return llt.matrixL();
    }
  }
  std::ostringstream msg;
  msg << "Cholesky factorization failed after jitter ladder {";
  for (std::size_t i = 0; i < tried.size(); ++i) msg << (i ? ", " : "") << tried[i];
  msg << "}";
  throw FactorizationError(msg.str(), tried);
}

GpPosterior GpPosterior::prior(const KernelSpec& kernel, Eigen::Index input_dim,
                               Eigen::Index output_dim, double noise_variance) {
  return fit(Eigen::MatrixXd(input_dim, 0), Eigen::MatrixXd(output_dim, 0), kernel, noise_variance);
}

GpPosterior GpPosterior::fit(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                             const KernelSpec& kernel, double noise_variance) {
  if (!(noise_variance > 0.0)) throw std::invalid_argument("GP noise variance must be positive");
  require_dim(targets.cols(), inputs.cols(), "GpPosterior::fit sample count");
  kernel.validate(inputs.rows());

  GpPosterior gp;
  gp.kernel_ = kernel;
  gp.noise_variance_ = noise_variance;
  gp.output_dim_ = targets.rows();
  gp.inputs_ = inputs;
  const Eigen::Index n = inputs.cols();
  if (n == 0) {
    gp.chol_.resize(0, 0);
    gp.alpha_.resize(0, targets.rows());
    return gp;
  }
  Eigen::MatrixXd k = kernel_matrix(kernel, inputs, inputs);
  k.diagonal().array() += noise_variance;
  gp.chol_ = cholesky_with_jitter(k, gp.jitter_);
  const Eigen::MatrixXd& l = gp.chol_;
  gp.alpha_ = targets.transpose();
  l.triangularView<Eigen::Lower>().solveInPlace(gp.alpha_);
  l.triangularView<Eigen::Lower>().transpose().solveInPlace(gp.alpha_);
  return gp;
}

Prediction GpPosterior::predict(const Eigen::VectorXd& z) const {
  require_dim(z.size(), input_dim(), "GpPosterior::predict");
  Eigen::MatrixXd mean;
  Eigen::VectorXd var;
  predict_batch(z, mean, var);
  return {mean.col(0), Eigen::VectorXd::Constant(output_dim_, std::sqrt(var[0]))};
}

void GpPosterior::predict_batch(const Eigen::MatrixXd& queries, Eigen::MatrixXd& mean,
                                Eigen::VectorXd& variance) const {
  require_dim(queries.rows(), input_dim(), "GpPosterior::predict_batch");
  variance = kernel_diag(kernel_, queries);
  if (size() == 0) {
    mean = Eigen::MatrixXd::Zero(output_dim_, queries.cols());
    return;
  }
  Eigen::MatrixXd kstar = kernel_matrix(kernel_, inputs_, queries);  // n x B
  mean.noalias() = alpha_.transpose() * kstar;
  chol_.triangularView<Eigen::Lower>().solveInPlace(kstar);
  variance -= kstar.colwise().squaredNorm().transpose();
  variance = variance.cwiseMax(0.0);
}

double GpPosterior::information_gain() const {
  if (size() == 0) return 0.0;
  const double log_det = 2.0 * chol_.diagonal().array().log().sum();
  return std::max(0.0, 0.5 * (log_det - static_cast<double>(size()) * std::log(noise_variance_)));
}

GpPosterior fit_posterior(const TransitionDataset& ds, const KernelSpec& kernel,
                          double noise_variance, bool delta_targets) {
  return GpPosterior::fit(ds.inputs(), ds.targets(delta_targets), kernel, noise_variance);
}

}  // namespace neorl::gp
