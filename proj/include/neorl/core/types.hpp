#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace neorl {

using StateVector = Eigen::VectorXd;
using ControlVector = Eigen::VectorXd;

struct Transition {
  StateVector state;
  ControlVector control;
  StateVector next_state;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_dim(Eigen::Index got, Eigen::Index want, const std::string& what) {
  if (got != want) {
    throw DimensionError(what + ": expected dimension " + std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

inline bool all_finite(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.allFinite();
}

}  // namespace neorl
