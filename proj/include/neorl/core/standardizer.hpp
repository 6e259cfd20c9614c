#pragma once

#include <Eigen/Core>

namespace neorl {

inline constexpr double kStandardizerScaleFloor = 1e-6;

// Per-row affine normalization of column-sample matrices. Scale is the
// unbiased sample standard deviation floored at kStandardizerScaleFloor.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer identity(Eigen::Index dim);
  static Standardizer fit(const Eigen::MatrixXd& samples);

  Eigen::Index dim() const { return mean.size(); }
  Eigen::MatrixXd transform(const Eigen::MatrixXd& samples) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& standardized) const;
};

struct TransitionStandardizer {
  Standardizer input;
  Standardizer target;
};

class TransitionDataset;

// Fits input ([x; u]) and target statistics of a nonempty dataset.
TransitionStandardizer standardizer_fit(const TransitionDataset& ds, bool delta_targets);

}  // namespace neorl
