#include "neorl/core/dataset.hpp"

namespace neorl {

TransitionDataset::TransitionDataset(int state_dim, int control_dim)
    : state_dim_(state_dim), control_dim_(control_dim) {
  if (state_dim < 1 || control_dim < 1) {
    throw std::invalid_argument("TransitionDataset: dimensions must be positive");
  }
}

void TransitionDataset::append(Transition t) {
  require_dim(t.state.size(), state_dim_, "TransitionDataset::append state");
  require_dim(t.control.size(), control_dim_, "TransitionDataset::append control");
  require_dim(t.next_state.size(), state_dim_, "TransitionDataset::append next_state");
  transitions_.push_back(std::move(t));
}

Eigen::MatrixXd TransitionDataset::inputs() const {
  Eigen::MatrixXd z(state_dim_ + control_dim_, static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    z.col(col).head(state_dim_) = transitions_[i].state;
    z.col(col).tail(control_dim_) = transitions_[i].control;
  }
  return z;
}

Eigen::MatrixXd TransitionDataset::targets(bool delta) const {
  Eigen::MatrixXd y(state_dim_, static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& t = transitions_[i];
    y.col(static_cast<Eigen::Index>(i)) = delta ? (t.next_state - t.state).eval() : t.next_state;
  }
  return y;
}

}  // namespace neorl
