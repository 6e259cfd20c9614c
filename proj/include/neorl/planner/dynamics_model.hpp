#pragma once

#include "neorl/envs/environment.hpp"
#include "neorl/gp/calibrated_model.hpp"

#include <functional>
#include <memory>

namespace neorl::planner {

// Batched one-step model used inside planning rollouts: mean next state and
// epistemic standard deviation per state dimension, plus the confidence width.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;
  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  // states: d_x x B, controls: d_u x B -> mean, std: d_x x B
  virtual void predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls,
                       Eigen::MatrixXd& mean, Eigen::MatrixXd& std) const = 0;
  virtual double beta() const = 0;
};

class GpDynamics : public DynamicsModel {
 public:
  explicit GpDynamics(std::shared_ptr<const gp::CalibratedModel> model) : model_(std::move(model)) {}

  int state_dim() const override { return model_->state_dim(); }
  int control_dim() const override { return model_->control_dim(); }
  void predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls, Eigen::MatrixXd& mean,
               Eigen::MatrixXd& std) const override {
    model_->predict_batch(states, controls, mean, std);
  }
  double beta() const override { return model_->beta(); }
  const gp::CalibratedModel& model() const { return *model_; }

 private:
  std::shared_ptr<const gp::CalibratedModel> model_;
};

// Oracle model: mu = f*, sigma = 0.
class TrueDynamics : public DynamicsModel {
 public:
  explicit TrueDynamics(const envs::Environment& env) : env_(env) {}

  int state_dim() const override { return env_.spec().state_dim; }
  int control_dim() const override { return env_.spec().control_dim; }
  void predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls, Eigen::MatrixXd& mean,
               Eigen::MatrixXd& std) const override;
  double beta() const override { return 0.0; }

 private:
  const envs::Environment& env_;
};

// mean = A x + B u + c with a fixed epistemic std vector.
class AffineDynamics : public DynamicsModel {
 public:
  AffineDynamics(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::VectorXd offset, Eigen::VectorXd std,
                 double beta);

  int state_dim() const override { return static_cast<int>(a_.rows()); }
  int control_dim() const override { return static_cast<int>(b_.cols()); }
  void predict(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls, Eigen::MatrixXd& mean,
               Eigen::MatrixXd& std) const override;
  double beta() const override { return beta_; }

 private:
  Eigen::MatrixXd a_, b_;
  Eigen::VectorXd offset_, std_;
  double beta_;
};

using CostFn = std::function<double(const StateVector&, const ControlVector&)>;

// Everything a rollout needs besides the decision variables.
struct PlanningProblem {
  const DynamicsModel* model = nullptr;
  CostFn cost;
  Eigen::VectorXd u_min;
  Eigen::VectorXd u_max;
  Eigen::VectorXd noise_std;  // process noise w_h inside rollouts; zero disables it

  int state_dim() const { return model->state_dim(); }
  int control_dim() const { return model->control_dim(); }
};

PlanningProblem make_problem(const DynamicsModel& model, const envs::Environment& env,
                             bool process_noise = true);

}  // namespace neorl::planner
