#include "neorl/gp/calibrated_model.hpp"

#include "neorl/gp/information_gain.hpp"

#include <cmath>
#include <stdexcept>

namespace neorl::gp {

double BetaSchedule::evaluate(double information_gain, double noise_std) const {
  if (kind == Kind::Fixed) {
    if (!(value >= 0.0)) throw std::invalid_argument("beta: fixed value must be nonnegative");
    return value;
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("beta: delta must lie in (0, 1]");
  if (!(rkhs_bound >= 0.0)) throw std::invalid_argument("beta: RKHS bound must be nonnegative");
  return rkhs_bound + noise_std * std::sqrt(2.0 * (information_gain + 1.0 + std::log(1.0 / delta)));
}

namespace {

Standardizer fixed_target_scaler(const GpModelConfig& cfg, int state_dim) {
  Standardizer s = Standardizer::identity(state_dim);
  if (cfg.output_scale.size() == 0) return s;
  if (cfg.output_scale.size() != state_dim) {
    throw std::invalid_argument("output_scale needs one entry per state dimension");
  }
  if (!(cfg.output_scale.array() > 0.0).all()) throw std::invalid_argument("output_scale entries must be > 0");
  s.scale = cfg.output_scale;
  return s;
}

}  // namespace

CalibratedModel CalibratedModel::prior(int state_dim, int control_dim, const GpModelConfig& cfg) {
  CalibratedModel m;
  m.cfg_ = cfg;
  m.state_dim_ = state_dim;
  m.control_dim_ = control_dim;
  m.scaler_ = {Standardizer::identity(state_dim + control_dim),
               cfg.standardize ? Standardizer::identity(state_dim) : fixed_target_scaler(cfg, state_dim)};
  m.posterior_ = GpPosterior::prior(cfg.kernel, state_dim + control_dim, state_dim, cfg.noise_variance);
  m.beta_ = cfg.beta.evaluate(0.0, std::sqrt(cfg.noise_variance));
  return m;
}

CalibratedModel CalibratedModel::fit(const TransitionDataset& ds, const GpModelConfig& cfg,
                                     double beta_floor) {
  if (ds.empty()) {
    CalibratedModel m = prior(ds.state_dim(), ds.control_dim(), cfg);
    m.beta_ = std::max(m.beta_, beta_floor);
    return m;
  }
  CalibratedModel m;
  m.cfg_ = cfg;
  m.state_dim_ = ds.state_dim();
  m.control_dim_ = ds.control_dim();
  m.data_count_ = ds.size();

  const bool delta = cfg.target == TargetMode::Delta;
  Eigen::MatrixXd z = ds.inputs();
  Eigen::MatrixXd y = ds.targets(delta);
  if (cfg.standardize) {
    m.scaler_ = {Standardizer::fit(z), Standardizer::fit(y)};
    z = m.scaler_.input.transform(z);
    y = m.scaler_.target.transform(y);
  } else {
    m.scaler_ = {Standardizer::identity(z.rows()), fixed_target_scaler(cfg, m.state_dim_)};
    y = m.scaler_.target.transform(y);
  }

  if (cfg.max_points > 0 && z.cols() > cfg.max_points) {
    const GreedySelection sel = greedy_select(z, cfg.max_points, cfg.kernel, cfg.noise_variance);
    Eigen::MatrixXd zs(z.rows(), static_cast<Eigen::Index>(sel.indices.size()));
    Eigen::MatrixXd ys(y.rows(), zs.cols());
    for (Eigen::Index i = 0; i < zs.cols(); ++i) {
      zs.col(i) = z.col(sel.indices[static_cast<std::size_t>(i)]);
      ys.col(i) = y.col(sel.indices[static_cast<std::size_t>(i)]);
    }
    z = std::move(zs);
    y = std::move(ys);
  }

  m.posterior_ = GpPosterior::fit(z, y, cfg.kernel, cfg.noise_variance);
  m.beta_ = std::max(beta_floor, cfg.beta.evaluate(m.posterior_.information_gain(),
                                                   std::sqrt(cfg.noise_variance)));
  return m;
}

void CalibratedModel::predict_batch(const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls,
                                    Eigen::MatrixXd& mean, Eigen::MatrixXd& std) const {
  require_dim(states.rows(), state_dim_, "CalibratedModel::predict_batch states");
  require_dim(controls.rows(), control_dim_, "CalibratedModel::predict_batch controls");
  require_dim(controls.cols(), states.cols(), "CalibratedModel::predict_batch batch size");
  Eigen::MatrixXd z(state_dim_ + control_dim_, states.cols());
  z.topRows(state_dim_) = states;
  z.bottomRows(control_dim_) = controls;
  z = scaler_.input.transform(z);

  Eigen::VectorXd var;
  posterior_.predict_batch(z, mean, var);
  mean = scaler_.target.inverse(mean);
  if (cfg_.target == TargetMode::Delta) mean += states;
  std = scaler_.target.scale * var.cwiseSqrt().transpose();
}

Prediction CalibratedModel::predict(const StateVector& x, const ControlVector& u) const {
  Eigen::MatrixXd mean, std;
  predict_batch(x, u, mean, std);
  return {mean.col(0), std.col(0)};
}

double membership_check(const GpPosterior& posterior, double beta, const Eigen::MatrixXd& test_points,
                        const Eigen::MatrixXd& true_values) {
  require_dim(true_values.cols(), test_points.cols(), "membership_check point count");
  require_dim(true_values.rows(), posterior.output_dim(), "membership_check output dimension");
  if (test_points.cols() == 0) return 1.0;
  Eigen::MatrixXd mean;
  Eigen::VectorXd var;
  posterior.predict_batch(test_points, mean, var);
  const Eigen::RowVectorXd band = beta * var.cwiseSqrt().transpose();
  const Eigen::MatrixXd resid = (mean - true_values).cwiseAbs();
  Eigen::Index inside = 0;
  for (Eigen::Index j = 0; j < resid.cols(); ++j)
    for (Eigen::Index i = 0; i < resid.rows(); ++i) inside += resid(i, j) <= band[j];
  return static_cast<double>(inside) / static_cast<double>(resid.size());
}

double membership_check(const CalibratedModel& model, const DynamicsFn& f_true,
                        const Eigen::MatrixXd& states, const Eigen::MatrixXd& controls) {
  if (states.cols() == 0) return 1.0;
  Eigen::MatrixXd mean, std;
  model.predict_batch(states, controls, mean, std);
  const double beta = model.beta();
  Eigen::Index inside = 0;
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    const StateVector f = f_true(states.col(j), controls.col(j));
    for (Eigen::Index i = 0; i < f.size(); ++i) inside += std::abs(mean(i, j) - f[i]) <= beta * std(i, j);
  }
  return static_cast<double>(inside) / static_cast<double>(mean.size());
}

}  // namespace neorl::gp
