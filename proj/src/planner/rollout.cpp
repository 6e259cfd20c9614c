#include "neorl/planner/rollout.hpp"

#include <stdexcept>

namespace neorl::planner {

std::string agent_name(PropagationMode mode) {
  switch (mode) {
    case PropagationMode::Optimistic: return "neorl";
    case PropagationMode::Mean: return "nemean";
    case PropagationMode::DistributionSampling: return "nepets";
    case PropagationMode::Thompson: return "nets";
  }
  return "unknown";
}

PropagationMode mode_from_agent_name(const std::string& name) {
  if (name == "neorl") return PropagationMode::Optimistic;
  if (name == "nemean") return PropagationMode::Mean;
  if (name == "nepets") return PropagationMode::DistributionSampling;
  if (name == "nets") return PropagationMode::Thompson;
  throw std::invalid_argument("unknown agent '" + name + "' (expected neorl, nemean, nepets, nets)");
}

Eigen::MatrixXd ActionPlan::decision() const {
  Eigen::MatrixXd d(actions.rows() + hallucination.rows(), actions.cols());
  d.topRows(actions.rows()) = actions;
  if (hallucination.rows() > 0) d.bottomRows(hallucination.rows()) = hallucination;
  return d;
}

RolloutNoise draw_rollout_noise(const PlanningProblem& problem, PropagationMode mode, int horizon,
                                int particles, RandomStream& rng) {
  if (particles < 1) throw std::invalid_argument("rollout: particles must be >= 1");
  if (horizon < 1) throw std::invalid_argument("rollout: horizon must be >= 1");
  const int dx = problem.state_dim();
  RolloutNoise noise;
  const bool stochastic = (problem.noise_std.array() > 0.0).any() || mode == PropagationMode::DistributionSampling;
  // Without any sampled term every particle follows the same path.
  noise.particles = stochastic ? particles : 1;
  if (mode == PropagationMode::Thompson) noise.thompson = rng.normal_matrix(dx, horizon);
  noise.process.reserve(static_cast<std::size_t>(horizon));
  for (int h = 0; h < horizon; ++h) {
    noise.process.push_back(stochastic ? rng.normal_matrix(dx, noise.particles)
                                       : Eigen::MatrixXd::Zero(dx, noise.particles));
  }
  return noise;
}

Eigen::VectorXd evaluate_candidates(const PlanningProblem& problem, PropagationMode mode,
                                    const StateVector& x0, const std::vector<Eigen::MatrixXd>& candidates,
                                    const RolloutNoise& noise, RolloutStats* stats) {
  const int dx = problem.state_dim();
  const int du = problem.control_dim();
  require_dim(x0.size(), dx, "rollout initial state");
  const auto num = static_cast<Eigen::Index>(candidates.size());
  if (num == 0) return {};
  const Eigen::Index horizon = candidates.front().cols();
  if (static_cast<Eigen::Index>(noise.process.size()) < horizon) {
    throw std::invalid_argument("rollout: noise horizon shorter than plan");
  }
  const bool optimistic = mode == PropagationMode::Optimistic;
  for (const auto& c : candidates) {
    require_dim(c.rows(), du + (optimistic ? dx : 0), "rollout decision rows");
    require_dim(c.cols(), horizon, "rollout decision horizon");
  }

  const Eigen::Index p = noise.particles;
  const Eigen::Index batch = num * p;
  Eigen::MatrixXd x = x0.replicate(1, batch);
  Eigen::MatrixXd u(du, batch);
  Eigen::MatrixXd mean, std;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(batch);
  std::vector<char> dead(static_cast<std::size_t>(batch), 0);
  const double beta = problem.model->beta();
  const Eigen::ArrayXd sw = problem.noise_std.array();

  for (Eigen::Index h = 0; h < horizon; ++h) {
    for (Eigen::Index k = 0; k < num; ++k) {
      for (Eigen::Index q = 0; q < p; ++q) u.col(k * p + q) = candidates[static_cast<std::size_t>(k)].col(h).head(du);
    }
    for (Eigen::Index b = 0; b < batch; ++b) {
      if (!dead[static_cast<std::size_t>(b)]) total[b] += problem.cost(x.col(b), u.col(b));
    }
    if (h + 1 == horizon) break;

    problem.model->predict(x, u, mean, std);
    const Eigen::MatrixXd& eps = noise.process[static_cast<std::size_t>(h)];
    for (Eigen::Index b = 0; b < batch; ++b) {
      const Eigen::Index k = b / p;
      const Eigen::Index q = b % p;
      auto next = x.col(b);
      switch (mode) {
        case PropagationMode::Optimistic:
          next = mean.col(b).array() +
                 beta * std.col(b).array() * candidates[static_cast<std::size_t>(k)].col(h).tail(dx).array() +
                 sw * eps.col(q).array();
          break;
        case PropagationMode::Mean:
          next = mean.col(b).array() + sw * eps.col(q).array();
          break;
        case PropagationMode::DistributionSampling:
          next = mean.col(b).array() +
                 (beta * beta * std.col(b).array().square() + sw.square()).sqrt() * eps.col(q).array();
          break;
        case PropagationMode::Thompson:
          next = mean.col(b).array() + beta * std.col(b).array() * noise.thompson.col(h).array() +
                 sw * eps.col(q).array();
          break;
      }
      if (!next.allFinite() && !dead[static_cast<std::size_t>(b)]) {
        dead[static_cast<std::size_t>(b)] = 1;
        if (stats) ++stats->non_finite_particles;
      }
      if (dead[static_cast<std::size_t>(b)]) next = x0;
    }
  }

  Eigen::VectorXd out(num);
  for (Eigen::Index k = 0; k < num; ++k) {
    double s = 0.0;
    for (Eigen::Index q = 0; q < p; ++q) {
      const Eigen::Index b = k * p + q;
      s += dead[static_cast<std::size_t>(b)] || !std::isfinite(total[b]) ? kNonFinitePenalty : total[b];
    }
    out[k] = s / static_cast<double>(p);
  }
  return out;
}

double rollout_model(const PlanningProblem& problem, PropagationMode mode, const StateVector& x0,
                     const ActionPlan& plan, int particles, RandomStream& rng) {
  const RolloutNoise noise = draw_rollout_noise(problem, mode, plan.horizon(), particles, rng);
  const Eigen::VectorXd cost = evaluate_candidates(problem, mode, x0, {plan.decision()}, noise);
  return cost[0];
}

}  // namespace neorl::planner
