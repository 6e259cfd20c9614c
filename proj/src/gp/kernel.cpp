#include "neorl/gp/kernel.hpp"

#include "neorl/core/types.hpp"

#include <cmath>
#include <stdexcept>

namespace neorl::gp {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Rbf: return "rbf";
    case KernelFamily::Linear: return "linear";
    case KernelFamily::Matern12: return "matern12";
    case KernelFamily::Matern32: return "matern32";
    case KernelFamily::Matern52: return "matern52";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "rbf") return KernelFamily::Rbf;
  if (name == "linear") return KernelFamily::Linear;
  if (name == "matern12") return KernelFamily::Matern12;
  if (name == "matern32") return KernelFamily::Matern32;
  if (name == "matern52") return KernelFamily::Matern52;
  throw std::invalid_argument("unknown kernel family '" + name + "'");
}

void KernelSpec::validate(Eigen::Index input_dim) const {
  if (lengthscale.size() != 1 && lengthscale.size() != input_dim) {
    throw DimensionError("kernel lengthscale has " + std::to_string(lengthscale.size()) +
                         " entries for input dimension " + std::to_string(input_dim));
  }
  if (!(lengthscale.array() > 0.0).all()) {
    throw std::invalid_argument("kernel lengthscale must be positive");
  }
  if (!(signal_variance > 0.0)) {
    throw std::invalid_argument("kernel signal variance must be positive");
  }
}

double KernelSpec::matern_nu() const {
  switch (family) {
    case KernelFamily::Matern12: return 0.5;
    case KernelFamily::Matern32: return 1.5;
    case KernelFamily::Matern52: return 2.5;
    default: return 0.0;
  }
}

KernelSpec make_kernel(KernelFamily family, double lengthscale, double signal_variance) {
  return {family, Eigen::VectorXd::Constant(1, lengthscale), signal_variance};
}

namespace {

Eigen::MatrixXd scaled(const KernelSpec& k, const Eigen::MatrixXd& a) {
  if (k.lengthscale.size() == 1) return a / k.lengthscale[0];
  return a.array().colwise() / k.lengthscale.array();
}

// Kernel value as a function of the scaled distance r (or r^2 for RBF).
double stationary(KernelFamily family, double sig, double r2) {
  r2 = std::max(r2, 0.0);
  switch (family) {
    case KernelFamily::Rbf: return sig * std::exp(-0.5 * r2);
    case KernelFamily::Matern12: return sig * std::exp(-std::sqrt(r2));
    case KernelFamily::Matern32: {
      const double s = std::sqrt(3.0 * r2);
      return sig * (1.0 + s) * std::exp(-s);
    }
    case KernelFamily::Matern52: {
      const double s = std::sqrt(5.0 * r2);
      return sig * (1.0 + s + 5.0 * r2 / 3.0) * std::exp(-s);
    }
    case KernelFamily::Linear: break;
  }
  throw std::logic_error("stationary() called with linear kernel");
}

}  // namespace

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  require_dim(zp.size(), z.size(), "kernel_eval");
  k.validate(z.size());
  const Eigen::VectorXd a = scaled(k, z);
  const Eigen::VectorXd b = scaled(k, zp);
  if (k.family == KernelFamily::Linear) return k.signal_variance * a.dot(b);
  return stationary(k.family, k.signal_variance, (a - b).squaredNorm());
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  require_dim(b.rows(), a.rows(), "kernel_matrix");
  k.validate(a.rows());
  const Eigen::MatrixXd sa = scaled(k, a);
  const Eigen::MatrixXd sb = scaled(k, b);
  Eigen::MatrixXd cross = sa.transpose() * sb;
  if (k.family == KernelFamily::Linear) return k.signal_variance * cross;

  const Eigen::VectorXd na = sa.colwise().squaredNorm().transpose();
  const Eigen::RowVectorXd nb = sb.colwise().squaredNorm();
  const double sig = k.signal_variance;
  if (k.family == KernelFamily::Rbf) {
    // exp(-0.5 * (|a|^2 + |b|^2 - 2 a.b)), vectorized
    cross = ((cross * 2.0).colwise() - na).rowwise() - nb;
    return sig * (0.5 * cross.array().min(0.0)).exp().matrix();
  }
  for (Eigen::Index j = 0; j < cross.cols(); ++j)
    for (Eigen::Index i = 0; i < cross.rows(); ++i)
      cross(i, j) = stationary(k.family, sig, na[i] + nb[j] - 2.0 * cross(i, j));
  return cross;
}

Eigen::VectorXd kernel_diag(const KernelSpec& k, const Eigen::MatrixXd& a) {
  k.validate(a.rows());
  if (k.family == KernelFamily::Linear) {
    return k.signal_variance * scaled(k, a).colwise().squaredNorm().transpose();
  }
  return Eigen::VectorXd::Constant(a.cols(), k.signal_variance);
}

}  // namespace neorl::gp
