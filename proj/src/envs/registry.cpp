#include "neorl/envs/registry.hpp"

#include "neorl/envs/cartpole.hpp"
#include "neorl/envs/mountain_car.hpp"
#include "neorl/envs/pendulum.hpp"
#include "neorl/envs/toy.hpp"

namespace neorl::envs {

const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names = {"pendulum", "mountaincar", "cartpole",
                                                 "cartpole_balance", "dummy", "linear1d"};
  return names;
}

std::unique_ptr<Environment> make_environment(const std::string& name, const EnvOverrides& overrides) {
  std::unique_ptr<Environment> env;
  if (name == "pendulum") {
    Pendulum::Params p;
    if (overrides.literal_pendulum_cost) p.velocity_cost = Pendulum::VelocityCost::Literal;
    env = std::make_unique<Pendulum>(p);
  } else if (name == "mountaincar") {
    env = std::make_unique<MountainCar>();
  } else if (name == "cartpole") {
    env = std::make_unique<CartPole>(CartPole::Task::SwingUp);
  } else if (name == "cartpole_balance") {
    env = std::make_unique<CartPole>(CartPole::Task::Balance);
  } else if (name == "dummy") {
    env = std::make_unique<ConstantCostEnv>();
  } else if (name == "linear1d") {
    env = std::make_unique<ScalarLinearEnv>();
  } else {
    throw std::invalid_argument("unknown environment '" + name + "'");
  }
  if (overrides.noise_std) env->set_noise_std(*overrides.noise_std);
  if (overrides.action_repeat) env->set_action_repeat(*overrides.action_repeat);
  switch (overrides.reset_mode) {
    case ResetMode::Default: break;
    case ResetMode::Never: env->set_reset_policy(ResetPolicy::never()); break;
    case ResetMode::OnPredicate: {
      ResetPolicy policy = env->triggering_reset_policy();
      if (policy.mode == ResetPolicy::Mode::Never) {
        throw std::invalid_argument("environment '" + name + "' has no reset predicate");
      }
      env->set_reset_policy(std::move(policy));
      break;
    }
  }
  return env;
}

}  // namespace neorl::envs
