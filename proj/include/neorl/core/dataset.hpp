#pragma once

#include "neorl/core/types.hpp"

#include <vector>

namespace neorl {

// Append-only log of observed transitions. Entries are never modified or
// reordered once appended.
class TransitionDataset {
 public:
  TransitionDataset(int state_dim, int control_dim);

  int state_dim() const { return state_dim_; }
  int control_dim() const { return control_dim_; }
  std::size_t size() const { return transitions_.size(); }
  bool empty() const { return transitions_.empty(); }

  void append(Transition t);
  const Transition& operator[](std::size_t i) const { return transitions_[i]; }

  auto begin() const { return transitions_.begin(); }
  auto end() const { return transitions_.end(); }

  // Regression inputs z = [x; u], one column per transition.
  Eigen::MatrixXd inputs() const;
  // next_state (absolute) or next_state - state (delta), one column per transition.
  Eigen::MatrixXd targets(bool delta) const;

 private:
  int state_dim_;
  int control_dim_;
  std::vector<Transition> transitions_;
};

}  // namespace neorl
