#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <string_view>

namespace neorl {

// Seeded random stream. Draws come from a private engine; substreams are
// derived from the seed alone, so splitting never depends on how many draws
// the parent has already consumed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  RandomStream split(std::string_view label) const;
  RandomStream split(std::uint64_t index) const;
  RandomStream split(std::string_view label, std::uint64_t index) const;

  double normal();
  double uniform(double lo = 0.0, double hi = 1.0);
  std::uint64_t next_u64();

  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
  Eigen::VectorXd uniform_vector(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);

}  // namespace neorl
