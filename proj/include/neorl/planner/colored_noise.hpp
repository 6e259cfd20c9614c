#pragma once

#include "neorl/core/random.hpp"

namespace neorl::planner {

// Gaussian sequences with power spectral density ~ 1/f^exponent, normalized
// to approximately unit marginal variance. Exponent 0 is white noise; larger
// exponents give smoother, more temporally correlated sequences.
class ColoredNoise {
 public:
  ColoredNoise(int length, double exponent);

  int length() const { return length_; }
  double exponent() const { return exponent_; }

  // count x length, one sequence per row.
  Eigen::MatrixXd sample(Eigen::Index count, RandomStream& rng) const;

 private:
  int length_;
  double exponent_;
  // length x (2 * num_freq): maps independent standard normals (real and
  // imaginary spectral parts) to one time-domain sequence via inverse rFFT.
  Eigen::MatrixXd synthesis_;
};

}  // namespace neorl::planner
