#include <doctest.h>

#include "neorl/envs/toy.hpp"
#include "neorl/runner/aggregate.hpp"
#include "neorl/runner/runner.hpp"

#include <cmath>
#include <numeric>

using namespace neorl;
using namespace neorl::runner;

namespace {

RunConfig small_run(long steps, EpisodeSchedule schedule) {
  RunConfig cfg;
  cfg.total_steps = steps;
  cfg.schedule = schedule;
  cfg.planner.num_samples = 20;
  cfg.planner.num_elites = 4;
  cfg.planner.optimizer_steps = 2;
  cfg.planner.horizon = 3;
  cfg.planner.particles = 1;
  return cfg;
}

// Blows up on its fourth step regardless of the action.
class ExplodingEnv : public envs::Environment {
 public:
  ExplodingEnv() : Environment(envs::ConstantCostEnv().spec()) {}
  StateVector dynamics(const StateVector& x, const ControlVector&) const override {
    return x.array() + (x[0] >= 2.5 ? INFINITY : 1.0);
  }
  double cost(const StateVector& x, const ControlVector&) const override { return x[0]; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<ExplodingEnv>(*this); }
};

}  // namespace

TEST_CASE("compute_H0 picks the smallest integer strictly above the ratio") {
  CHECK(compute_H0(2.0, 1.0, 0.5) == 2);
  CHECK(compute_H0(1.0001, 1.0, 0.5) == 1);
  // ln 10 / ln(10/9) = 21.85...
  CHECK(std::log(10.0) / std::log(1.0 / 0.9) == doctest::Approx(21.854).epsilon(1e-4));
  CHECK(compute_H0(10.0, 1.0, 0.9) == 22);
  CHECK_THROWS_AS(compute_H0(2.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_H0(2.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_H0(1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(compute_H0(2.0, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("doubling schedule examples") {
  CHECK(doubling_schedule(2, 14) == std::vector<long>{2, 4, 8});
  CHECK(doubling_schedule(2, 10) == std::vector<long>{2, 4, 4});
  CHECK(doubling_schedule(1, 1) == std::vector<long>{1});
  CHECK(doubling_schedule(8, 5) == std::vector<long>{5});
  CHECK_THROWS_AS(doubling_schedule(0, 5), std::invalid_argument);
}

TEST_CASE("doubling schedule sums to T and doubles up to the truncated tail") {
  for (long h0 : {1L, 2L, 3L, 7L, 64L, 1000L}) {
    for (long T = h0; T <= 10000; ++T) {
      const auto s = doubling_schedule(h0, T);
      REQUIRE(std::accumulate(s.begin(), s.end(), 0L) == T);
      for (std::size_t n = 0; n + 1 < s.size(); ++n) REQUIRE(s[n] == (h0 << n));
      REQUIRE(s.back() <= (h0 << (s.size() - 1)));
    }
  }
}

TEST_CASE("refit boundaries follow the schedule") {
  CHECK(refit_boundaries(EpisodeSchedule::fixed(1), 3) == std::vector<long>{1, 2, 3});
  CHECK(refit_boundaries(EpisodeSchedule::fixed(4), 10) == std::vector<long>{4, 8});
  CHECK(refit_boundaries(EpisodeSchedule::doubling(2), 6) == std::vector<long>{2, 6});
  CHECK(refit_boundaries(EpisodeSchedule::doubling(5), 5) == std::vector<long>{5});
  CHECK_THROWS_AS(refit_boundaries(EpisodeSchedule::fixed(0), 3), std::invalid_argument);
}

TEST_CASE("practical run with H = 1 refits after every step") {
  envs::ScalarLinearEnv env;
  TransitionDataset data(1, 1);
  const RunLog log = run_practical(env, small_run(3, EpisodeSchedule::fixed(1)), RandomStream(1), &data);
  REQUIRE(log.refits.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(log.refits[i].after_step == static_cast<long>(i + 1));
    CHECK(log.refits[i].dataset_size == i + 1);
  }
  CHECK(data.size() == 3);
  CHECK(log.steps[0].episode == 0);
  CHECK(log.steps[2].episode == 2);
}

TEST_CASE("doubling run refits at episode boundaries") {
  envs::ScalarLinearEnv env;
  const RunLog log = run_doubling(env, small_run(6, EpisodeSchedule::doubling(2)), RandomStream(2));
  REQUIRE(log.refits.size() == 2);
  CHECK(log.refits[0].after_step == 2);
  CHECK(log.refits[1].after_step == 6);
  std::vector<long> episodes;
  for (const auto& s : log.steps) episodes.push_back(s.episode);
  CHECK(episodes == std::vector<long>{0, 0, 1, 1, 1, 1});

  const RunLog single = run_doubling(env, small_run(6, EpisodeSchedule::doubling(6)), RandomStream(2));
  CHECK(single.refits.size() == 1);

  CHECK_THROWS_AS(run_doubling(env, small_run(6, EpisodeSchedule::fixed(2)), RandomStream(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_practical(env, small_run(6, EpisodeSchedule::doubling(2)), RandomStream(2)),
                  std::invalid_argument);
}

TEST_CASE("constant cost with matching reference gives zero regret") {
  envs::ConstantCostEnv env(1.0);
  RunConfig cfg = small_run(40, EpisodeSchedule::fixed(10));
  cfg.a_star = 1.0;
  const RunLog zero = run(env, cfg, RandomStream(3));
  for (const auto& s : zero.steps) CHECK(s.regret == 0.0);
  cfg.a_star = 0.0;
  const RunLog linear = run(env, cfg, RandomStream(3));
  for (const auto& s : linear.steps) {
    CHECK(s.regret == static_cast<double>(s.t + 1));
    CHECK(s.avg_cost == 1.0);
  }
}

TEST_CASE("regret increments equal cost minus reference exactly") {
  envs::ScalarLinearEnv env;
  RunConfig cfg = small_run(60, EpisodeSchedule::fixed(5));
  cfg.a_star = 0.0137;
  const RunLog log = run(env, cfg, RandomStream(4));
  REQUIRE(log.steps.size() == 60);
  double regret = 0.0, cum = 0.0;
  for (const auto& s : log.steps) {
    regret += s.cost - cfg.a_star;
    cum += s.cost;
    CHECK(s.regret == regret);  // same association order, so bitwise equal
    CHECK(s.cum_cost == cum);
    CHECK(s.avg_cost == cum / static_cast<double>(s.t + 1));
  }
}

TEST_CASE("without resets the trajectory is a single chain") {
  envs::ScalarLinearEnv env;
  TransitionDataset data(1, 1);
  const RunLog log = run(env, small_run(50, EpisodeSchedule::fixed(10)), RandomStream(5), &data);
  REQUIRE(data.size() == 50);
  CHECK(data[0].state == env.spec().initial_state);
  for (std::size_t k = 0; k + 1 < data.size(); ++k) CHECK(data[k].next_state == data[k + 1].state);
  for (std::size_t k = 0; k < data.size(); ++k) CHECK(log.states[k] == data[k].state);
  CHECK(log.reset_count == 0);
}

TEST_CASE("dataset size grows monotonically and equals the step count at refits") {
  envs::ScalarLinearEnv env;
  const RunLog log = run(env, small_run(45, EpisodeSchedule::doubling(3)), RandomStream(6));
  std::size_t prev = 0;
  for (const auto& r : log.refits) {
    CHECK(r.dataset_size >= prev);
    CHECK(r.dataset_size == static_cast<std::size_t>(r.after_step));
    prev = r.dataset_size;
  }
  CHECK(log.refits.back().after_step == 45);
}

TEST_CASE("triggered resets keep data and the regret clock") {
  envs::ScalarLinearEnv::Params p;
  p.a = 1.5;
  p.u_max = 0.01;  // too weak to stabilize, so the state escapes repeatedly
  p.initial_state = 0.5;
  envs::ScalarLinearEnv env(p);
  env.set_reset_policy(envs::ResetPolicy::on([](const StateVector& x) { return std::abs(x[0]) > 2.0; }));
  TransitionDataset data(1, 1);
  const RunLog log = run(env, small_run(60, EpisodeSchedule::fixed(10)), RandomStream(7), &data);
  CHECK(log.reset_count > 0);
  CHECK(data.size() == 60);
  CHECK(log.steps.size() == 60);
  long counted = 0;
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    if (!log.steps[k].did_reset) continue;
    ++counted;
    CHECK(std::abs(data[k].next_state[0]) > 2.0);
    if (k + 1 < data.size()) CHECK(std::abs(data[k + 1].state[0]) < 2.0);
  }
  CHECK(counted == log.reset_count);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  envs::ScalarLinearEnv env;
  const RunConfig cfg = small_run(30, EpisodeSchedule::doubling(2));
  const RunLog a = run(env, cfg, RandomStream(8));
  const RunLog b = run(env, cfg, RandomStream(8));
  const RunLog c = run(env, cfg, RandomStream(9));
  REQUIRE(a.steps.size() == b.steps.size());
  bool same_as_c = true;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].cost == b.steps[i].cost);
    CHECK(a.states[i] == b.states[i]);
    same_as_c = same_as_c && a.steps[i].cost == c.steps[i].cost;
  }
  CHECK_FALSE(same_as_c);
}

TEST_CASE("a blow-up ends the run with a flagged partial log") {
  ExplodingEnv env;
  const RunLog log = run(env, small_run(10, EpisodeSchedule::fixed(2)), RandomStream(10));
  CHECK(log.failed);
  CHECK_FALSE(log.failure.empty());
  CHECK(log.steps.size() == 3);
  CHECK(log.refits.size() == 1);
}

TEST_CASE("oracle average cost on a constant-cost system is the constant") {
  envs::ConstantCostEnv env(0.75);
  const RunConfig cfg = small_run(1, EpisodeSchedule::fixed(1));
  const OracleEstimate est = estimate_optimal_average_cost(env, cfg.planner, RandomStream(11), 10, 50);
  CHECK(est.average_cost == 0.75);
  CHECK_FALSE(est.failed);
  CHECK_THROWS_AS(estimate_optimal_average_cost(env, cfg.planner, RandomStream(11), 0, 0), std::invalid_argument);
}

TEST_CASE("oracle average cost on the scalar linear system matches the Riccati solution") {
  // a = b = q = r = 1: P = 1 + P - P^2 / (1 + P), so P^2 = P + 1 and the
  // optimal average cost is s^2 P.
  envs::ScalarLinearEnv env;
  const double P = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(P * P == doctest::Approx(P + 1.0).epsilon(1e-14));
  const double expected = env.params().noise_std * env.params().noise_std * P;
  planner::PlannerConfig cfg;
  cfg.num_samples = 200;
  cfg.num_elites = 20;
  cfg.optimizer_steps = 10;
  cfg.horizon = 5;
  cfg.particles = 1;
  cfg.process_noise = false;
  // The optimal feedback is white in time and small next to the +-5 range.
  cfg.colored_noise_exponent = 0.0;
  cfg.init_std = Eigen::VectorXd::Ones(1);
  const OracleEstimate est = estimate_optimal_average_cost(env, cfg, RandomStream(12), 200, 2000);
  CHECK(std::abs(est.average_cost - expected) <= 1e-2);
  MESSAGE("oracle " << est.average_cost << " vs Riccati " << expected);
}

TEST_CASE("aggregate statistics across seeds") {
  auto log_with = [](std::vector<double> costs) {
    RunLog l;
    for (double c : costs) l.record(c, 0, false);
    return l;
  };
  SUBCASE("identical logs have zero standard error") {
    const Aggregate a = aggregate_seeds({log_with({1, 2, 3}), log_with({1, 2, 3})});
    for (double s : a.regret.stderr_) CHECK(s == 0.0);
    CHECK(a.seeds == 2);
    CHECK(a.steps == 3);
  }
  SUBCASE("two-point statistics") {
    const Aggregate a = aggregate_seeds({log_with({0}), log_with({2})});
    CHECK(a.regret.mean[0] == 1.0);
    CHECK(a.regret.stderr_[0] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("ten random logs against a streaming oracle") {
    RandomStream rng(13);
    std::vector<RunLog> logs;
    for (int s = 0; s < 10; ++s) {
      std::vector<double> costs;
      for (int t = 0; t < 200; ++t) costs.push_back(std::exp(rng.normal()));
      logs.push_back(log_with(costs));
    }
    const Aggregate a = aggregate_seeds(logs);
    for (std::size_t t = 0; t < 200; ++t) {
      // Welford's single-pass update as the independent reference.
      double mean = 0.0, m2 = 0.0;
      for (std::size_t k = 0; k < logs.size(); ++k) {
        const double x = logs[k].steps[t].avg_cost;
        const double d = x - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (x - mean);
      }
      const double se = std::sqrt(m2 / 9.0) / std::sqrt(10.0);
      CHECK(a.avg_cost.mean[t] == doctest::Approx(mean).epsilon(1e-10));
      CHECK(a.avg_cost.stderr_[t] == doctest::Approx(se).epsilon(1e-10));
    }
  }
  SUBCASE("truncated logs and empty input") {
    const Aggregate a = aggregate_seeds({log_with({1, 2, 3}), log_with({1})});
    CHECK(a.steps == 1);
    CHECK_THROWS_AS(aggregate_seeds({}), std::invalid_argument);
  }
  SUBCASE("mean and stderr of scalars") {
    CHECK(mean_and_stderr({4.0}) == std::pair{4.0, 0.0});
  }
}
