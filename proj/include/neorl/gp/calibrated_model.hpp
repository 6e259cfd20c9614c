#pragma once

#include "neorl/core/dataset.hpp"
#include "neorl/core/standardizer.hpp"
#include "neorl/gp/posterior.hpp"

#include <functional>

namespace neorl::gp {

// Confidence-width schedule beta_n(delta).
//   Fixed:          beta = value
//   InfoGainBased:  beta = B + s * sqrt(2 (Gamma_n + 1 + ln(1/delta)))
// where s is the observation-noise standard deviation and Gamma_n the
// information gain of the data the posterior conditions on.
struct BetaSchedule {
  enum class Kind { Fixed, InfoGainBased };
  Kind kind = Kind::Fixed;
  double value = 2.0;
  double rkhs_bound = 1.0;
  double delta = 0.1;

  static BetaSchedule fixed(double v) { return {Kind::Fixed, v, 1.0, 0.1}; }
  static BetaSchedule info_gain(double bound, double delta) {
    return {Kind::InfoGainBased, 0.0, bound, delta};
  }

  double evaluate(double information_gain, double noise_std) const;
};

enum class TargetMode { Delta, Absolute };

struct GpModelConfig {
  KernelSpec kernel;
  double noise_variance = 1e-3;
  BetaSchedule beta = BetaSchedule::fixed(2.0);
  TargetMode target = TargetMode::Delta;
  bool standardize = true;
  // Fixed per-output target scale used when standardize is false, so each
  // output gets a prior std of signal_std * output_scale[i]. Empty means 1.
  Eigen::VectorXd output_scale;
  // Cap on the number of transitions the posterior conditions on; 0 keeps all.
  // When the dataset is larger, a subset is picked by greedy information gain.
  int max_points = 0;
};

// Per-dimension GP dynamics model (mu_n, sigma_n) with its beta_n. Inputs are
// z = [x; u]; predictions are returned in raw state units.
class CalibratedModel {
 public:
  static CalibratedModel prior(int state_dim, int control_dim, const GpModelConfig& cfg);
  // beta_floor keeps beta_n nondecreasing across refits.
  static CalibratedModel fit(const TransitionDataset& ds, const GpModelConfig& cfg,
                             double beta_floor = 0.0);

  // states: d_x x B, controls: d_u x B.
  void predict_batch(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls,
                     Eigen::MatrixXd& mean, Eigen::MatrixXd& std) const;
  Prediction predict(const StateVector& x, const ControlVector& u) const;

  double beta() const { return beta_; }
  std::size_t data_count() const { return data_count_; }
  double information_gain() const { return posterior_.information_gain(); }
  const GpPosterior& posterior() const { return posterior_; }
  const GpModelConfig& config() const { return cfg_; }
  int state_dim() const { return state_dim_; }
  int control_dim() const { return control_dim_; }

 private:
  GpModelConfig cfg_;
  int state_dim_ = 0;
  int control_dim_ = 0;
  std::size_t data_count_ = 0;
  double beta_ = 0.0;
  TransitionStandardizer scaler_;
  GpPosterior posterior_;
};

// Fraction of (point, output) pairs with |mu_j(z) - f_j(z)| <= beta sigma_j(z).
// test_points: d x N, true_values: m x N.
double membership_check(const GpPosterior& posterior, double beta, const Eigen::MatrixXd& test_points,
                        const Eigen::MatrixXd& true_values);

using DynamicsFn = std::function<StateVector(const StateVector&, const ControlVector&)>;

double membership_check(const CalibratedModel& model, const DynamicsFn& f_true,
                        const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls);

}  // namespace neorl::gp
