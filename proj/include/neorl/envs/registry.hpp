#pragma once

#include "neorl/envs/environment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace neorl::envs {

enum class ResetMode { Default, Never, OnPredicate };

struct EnvOverrides {
  std::optional<double> noise_std;
  std::optional<int> action_repeat;
  ResetMode reset_mode = ResetMode::Default;
  bool literal_pendulum_cost = false;
};

const std::vector<std::string>& environment_names();

// pendulum, mountaincar, cartpole, cartpole_balance, dummy, linear1d
std::unique_ptr<Environment> make_environment(const std::string& name, const EnvOverrides& overrides = {});

}  // namespace neorl::envs
