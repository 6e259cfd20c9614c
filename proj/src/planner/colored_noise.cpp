#include "neorl/planner/colored_noise.hpp"

#include <cmath>
#include <stdexcept>

namespace neorl::planner {

ColoredNoise::ColoredNoise(int length, double exponent) : length_(length), exponent_(exponent) {
  if (length < 1) throw std::invalid_argument("ColoredNoise: length must be >= 1");
  if (length == 1) {
    synthesis_ = Eigen::MatrixXd::Ones(1, 1);
    return;
  }
  const int n = length;
  const int nf = n / 2 + 1;
  const bool even = n % 2 == 0;

  // Spectral amplitudes, with the DC bin clamped to the lowest nonzero frequency.
  Eigen::VectorXd amp(nf);
  for (int k = 0; k < nf; ++k) {
    const double f = std::max(static_cast<double>(k), 1.0) / n;
    amp[k] = std::pow(f, -exponent / 2.0);
  }
  double w2 = 0.0;
  for (int k = 1; k < nf; ++k) {
    double w = amp[k];
    if (k == nf - 1) w *= (1.0 + n % 2) / 2.0;
    w2 += w * w;
  }
  const double sigma = 2.0 * std::sqrt(w2) / n;

  synthesis_ = Eigen::MatrixXd::Zero(n, 2 * nf);
  for (int t = 0; t < n; ++t) {
    for (int k = 0; k < nf; ++k) {
      const bool nyquist = even && k == nf - 1;
      const double weight = (k == 0 || nyquist) ? 1.0 : 2.0;
      const double adj = (k == 0 || nyquist) ? std::sqrt(2.0) : 1.0;
      const double phase = 2.0 * M_PI * k * t / n;
      synthesis_(t, k) = weight * adj * amp[k] * std::cos(phase) / (n * sigma);
      if (k != 0 && !nyquist) synthesis_(t, nf + k) = -weight * amp[k] * std::sin(phase) / (n * sigma);
    }
  }
}

Eigen::MatrixXd ColoredNoise::sample(Eigen::Index count, RandomStream& rng) const {
  const Eigen::MatrixXd white = rng.normal_matrix(synthesis_.cols(), count);
  return (synthesis_ * white).transpose();
}

}  // namespace neorl::planner
