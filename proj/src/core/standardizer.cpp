#include "neorl/core/standardizer.hpp"

#include "neorl/core/dataset.hpp"

#include <stdexcept>

namespace neorl {

Standardizer Standardizer::identity(Eigen::Index dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.cols();
  if (n == 0) throw std::invalid_argument("Standardizer::fit: empty sample set");
  Standardizer s;
  s.mean = samples.rowwise().mean();
  s.scale = Eigen::VectorXd::Constant(samples.rows(), kStandardizerScaleFloor);
  if (n > 1) {
    const Eigen::MatrixXd centered = samples.colwise() - s.mean;
    const Eigen::VectorXd var = centered.rowwise().squaredNorm() / static_cast<double>(n - 1);
    s.scale = var.cwiseSqrt().cwiseMax(kStandardizerScaleFloor);
  }
  return s;
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& samples) const {
  return (samples.colwise() - mean).array().colwise() / scale.array();
}

Eigen::MatrixXd Standardizer::inverse(const Eigen::MatrixXd& standardized) const {
  return (standardized.array().colwise() * scale.array()).matrix().colwise() + mean;
}

TransitionStandardizer standardizer_fit(const TransitionDataset& ds, bool delta_targets) {
  if (ds.empty()) throw std::invalid_argument("standardizer_fit: empty dataset");
  return {Standardizer::fit(ds.inputs()), Standardizer::fit(ds.targets(delta_targets))};
}

}  // namespace neorl
