#include <doctest.h>

#include "neorl/core/dataset.hpp"
#include "neorl/core/random.hpp"
#include "neorl/core/standardizer.hpp"

#include <cmath>
#include <cstring>

using namespace neorl;

namespace {

Transition random_transition(RandomStream& rng, int dx, int du) {
  return {rng.normal_vector(dx), rng.normal_vector(du), rng.normal_vector(dx)};
}

bool bit_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("dataset starts empty and grows by one per append") {
  TransitionDataset ds(3, 1);
  CHECK(ds.empty());
  RandomStream rng(1);
  ds.append(random_transition(rng, 3, 1));
  CHECK(ds.size() == 1);
  for (int i = 0; i < 9; ++i) ds.append(random_transition(rng, 3, 1));
  CHECK(ds.size() == 10);
}

TEST_CASE("dataset append leaves earlier entries untouched") {
  TransitionDataset ds(2, 1);
  RandomStream rng(2);
  ds.append(random_transition(rng, 2, 1));
  const Transition first = ds[0];
  for (int i = 0; i < 20; ++i) {
    ds.append(random_transition(rng, 2, 1));
    CHECK(bit_equal(ds[0].state, first.state));
    CHECK(bit_equal(ds[0].next_state, first.next_state));
  }
}

TEST_CASE("dataset round-trips 100 random transitions bit-exactly in order") {
  RandomStream rng(3);
  std::vector<Transition> reference;
  TransitionDataset ds(4, 2);
  for (int i = 0; i < 100; ++i) {
    reference.push_back(random_transition(rng, 4, 2));
    ds.append(reference.back());
  }
  REQUIRE(ds.size() == 100);
  std::size_t k = 0;
  for (const auto& t : ds) {
    CHECK(bit_equal(t.state, reference[k].state));
    CHECK(bit_equal(t.control, reference[k].control));
    CHECK(bit_equal(t.next_state, reference[k].next_state));
    ++k;
  }
  CHECK(k == 100);
}

TEST_CASE("dataset rejects transitions of the wrong shape") {
  TransitionDataset ds(3, 1);
  CHECK_THROWS_AS(ds.append({Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(3)}),
                  DimensionError);
  CHECK_THROWS_AS(ds.append({Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)}),
                  DimensionError);
  CHECK_THROWS_AS(ds.append({Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(4)}),
                  DimensionError);
  CHECK(ds.empty());
}

TEST_CASE("dataset regression matrices stack inputs and targets per column") {
  TransitionDataset ds(2, 1);
  ds.append({Eigen::Vector2d(1, 2), Eigen::VectorXd::Constant(1, 3), Eigen::Vector2d(5, 7)});
  const Eigen::MatrixXd z = ds.inputs();
  CHECK(z.rows() == 3);
  CHECK(z(2, 0) == 3.0);
  CHECK(ds.targets(false)(1, 0) == 7.0);
  CHECK(ds.targets(true)(0, 0) == 4.0);
  CHECK(ds.targets(true)(1, 0) == 5.0);
}

TEST_CASE("standardizer of a single transition uses the scale floor") {
  TransitionDataset ds(2, 1);
  ds.append({Eigen::Vector2d(0.3, -1.2), Eigen::VectorXd::Constant(1, 0.7), Eigen::Vector2d(0.5, 2.0)});
  const TransitionStandardizer s = standardizer_fit(ds, false);
  CHECK(s.input.mean[0] == 0.3);
  CHECK(s.input.mean[1] == -1.2);
  CHECK(s.input.mean[2] == 0.7);
  CHECK(s.target.mean[1] == 2.0);
  CHECK((s.input.scale.array() == kStandardizerScaleFloor).all());
  CHECK((s.target.scale.array() == kStandardizerScaleFloor).all());
}

TEST_CASE("standardizer of symmetric data has zero mean") {
  TransitionDataset ds(1, 1);
  const double a = 2.5;
  ds.append({Eigen::VectorXd::Constant(1, -a), Eigen::VectorXd::Constant(1, a), Eigen::VectorXd::Constant(1, -a)});
  ds.append({Eigen::VectorXd::Constant(1, a), Eigen::VectorXd::Constant(1, -a), Eigen::VectorXd::Constant(1, a)});
  const TransitionStandardizer s = standardizer_fit(ds, false);
  CHECK(s.input.mean.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.target.mean.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("standardized columns have zero mean and unit sample std") {
  RandomStream rng(4);
  TransitionDataset ds(3, 2);
  for (int i = 0; i < 50; ++i) {
    Transition t = random_transition(rng, 3, 2);
    t.state *= 7.0;
    t.state.array() += 3.0;
    ds.append(t);
  }
  const TransitionStandardizer s = standardizer_fit(ds, true);
  for (const Eigen::MatrixXd& z : {s.input.transform(ds.inputs()), s.target.transform(ds.targets(true))}) {
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      // Independent oracle: two-pass sample statistics.
      const double mean = z.row(r).mean();
      double ss = 0.0;
      for (Eigen::Index c = 0; c < z.cols(); ++c) ss += (z(r, c) - mean) * (z(r, c) - mean);
      const double sd = std::sqrt(ss / static_cast<double>(z.cols() - 1));
      CHECK(std::abs(mean) <= 1e-10);
      CHECK(std::abs(sd - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("standardizer inverse undoes transform") {
  RandomStream rng(5);
  const Eigen::MatrixXd x = 10.0 * rng.normal_matrix(4, 30);
  const Standardizer s = Standardizer::fit(x);
  CHECK((s.scale.array() > 0.0).all());
  CHECK((s.inverse(s.transform(x)) - x).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.transform(s.inverse(x)) - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("standardizer refuses an empty dataset") {
  TransitionDataset ds(2, 1);
  CHECK_THROWS_AS(standardizer_fit(ds, true), std::invalid_argument);
}

TEST_CASE("random streams with equal seeds agree draw for draw") {
  RandomStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differs = differs || x != c.normal();
  }
  CHECK(differs);
  CHECK(a.draws() == 1000);
}

TEST_CASE("split streams depend only on the seed and label") {
  RandomStream parent(7);
  const RandomStream before = parent.split("env");
  for (int i = 0; i < 10; ++i) parent.normal();
  RandomStream after = parent.split("env");
  RandomStream copy = before;
  for (int i = 0; i < 100; ++i) CHECK(copy.normal() == after.normal());
  CHECK(parent.split("env").seed() != parent.split("plan").seed());
  CHECK(parent.split("plan", 1).seed() != parent.split("plan", 2).seed());
  CHECK(parent.split(std::uint64_t{3}).seed() != parent.split(std::uint64_t{4}).seed());
}

TEST_CASE("uniform draws stay in range") {
  RandomStream rng(9);
  const Eigen::VectorXd lo = Eigen::Vector2d(-1.0, 2.0), hi = Eigen::Vector2d(1.0, 2.5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-3.0, -2.0);
    CHECK(u >= -3.0);
    CHECK(u < -2.0);
    const Eigen::VectorXd v = rng.uniform_vector(lo, hi);
    CHECK(((v.array() >= lo.array()) && (v.array() <= hi.array())).all());
  }
}
