#pragma once

#include <Eigen/Core>

#include <string>

namespace neorl::gp {

enum class KernelFamily { Rbf, Linear, Matern12, Matern32, Matern52 };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

// Stationary kernels (RBF, Matern) satisfy k(z, z) = signal_variance.
// Linear is sig * sum_i z_i z'_i / l_i^2, i.e. z^T z' at unit lengthscale.
struct KernelSpec {
  KernelFamily family = KernelFamily::Rbf;
  // Size 1 (isotropic) or one entry per input dimension.
  Eigen::VectorXd lengthscale = Eigen::VectorXd::Ones(1);
  double signal_variance = 1.0;

  void validate(Eigen::Index input_dim) const;
  // Smoothness parameter nu of a Matern family; 0 otherwise.
  double matern_nu() const;
};

KernelSpec make_kernel(KernelFamily family, double lengthscale = 1.0, double signal_variance = 1.0);

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

// Gram block between column-sample matrices a (d x n) and b (d x m).
Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// k(z, z) for every column.
Eigen::VectorXd kernel_diag(const KernelSpec& k, const Eigen::MatrixXd& a);

}  // namespace neorl::gp
