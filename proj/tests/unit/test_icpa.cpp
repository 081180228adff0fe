#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sparsepresence/cpa.hpp"
#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/errors.hpp"
#include "sparsepresence/icpa.hpp"
#include "sparsepresence/signal_model.hpp"

using namespace spres;

TEST_CASE("fresh state is the prior") {
  IcpaSolver s(5, 0.5);
  CHECK(s.n_atoms() == 5);
  CHECK(s.steps_processed() == 0);
  CHECK(s.theta().cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.gain() - 2.0 * Eigen::MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_THROWS_AS(IcpaSolver(0, 0.5), ArgumentError);
  CHECK_THROWS_AS(IcpaSolver(5, 0.0), ArgumentError);
  CHECK_THROWS_AS(IcpaSolver(5, -1.0), ArgumentError);
}

TEST_CASE("one step on an orthonormal pair matches the hand computation") {
  // B = I2, y = (1,2), lambda = 1/2:
  //   phi = diag(1,2), P1 = (lambda I + phi^T phi)^-1 = diag(2/3, 2/9),
  //   theta1 = P1 phi^T y = (2/3, 8/9)
  Dictionary d{Eigen::MatrixXd::Identity(2, 2)};
  Eigen::VectorXd y(2);
  y << 1, 2;
  IcpaSolver s(2, 0.5);
  s.step(d, y);
  CHECK(s.steps_processed() == 1);
  CHECK(s.gain()(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.gain()(1, 1) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  CHECK(std::abs(s.gain()(0, 1)) <= 1e-14);
  CHECK(s.theta()(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.theta()(1) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("the gain tracks the dense information-matrix inverse") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    const int n = 8, m = 24, t = 5;
    const double lambda = 0.4;
    Dictionary d = Dictionary::generate(n, m, seed);
    SynthesisResult s = synthesize(d, ActiveSet::sample(2, m, seed), t, seed);
    ObservationSet obs = add_noise(s.observations, 0.1, seed);

    IcpaSolver solver(m, lambda);
    Eigen::MatrixXd info =
        lambda * Eigen::MatrixXd::Identity(m, m);  // accumulated lhs
    for (int step = 0; step < t; ++step) {
      const Eigen::VectorXd y = obs.matrix().col(step);
      solver.step(d, y);
      const Eigen::MatrixXd phi = projection_matrix(d, y);
      info.noalias() += phi.transpose() * phi;
      const Eigen::MatrixXd dense = info.inverse();
      const double rel =
          (solver.gain() - dense).norm() / dense.norm();
      CHECK(rel <= 1e-8);
    }
  }
}

TEST_CASE("streaming matches the one-shot ridge solution") {
  struct Shape {
    int n, m, t;
    double lambda;
  };
  for (Shape sh : {Shape{8, 24, 4, 0.04}, Shape{16, 96, 3, 0.4},
                   Shape{32, 20, 6, 4.0}}) {
    Dictionary d = Dictionary::generate(sh.n, sh.m, 17);
    SynthesisResult s =
        synthesize(d, ActiveSet::sample(3, sh.m, 17), sh.t, 17);
    ObservationSet obs = add_noise(s.observations, 0.1, 17);
    PresenceVector batch = solve_cpa_regularized(d, obs, sh.lambda);
    PresenceVector stream = solve_icpa(d, obs, sh.lambda);
    const double rel = (batch.theta - stream.theta).norm() / batch.theta.norm();
    CHECK(rel <= 1e-8);
  }
}

TEST_CASE("a silent observation leaves the state unchanged") {
  Dictionary d = Dictionary::generate(6, 12, 3);
  SynthesisResult s = synthesize(d, ActiveSet::sample(2, 12, 3), 1, 3);
  IcpaSolver solver(12, 0.4);
  solver.step(d, s.observations.matrix().col(0));
  const Eigen::VectorXd theta_before = solver.theta();
  const Eigen::MatrixXd gain_before = solver.gain();
  solver.step(d, Eigen::VectorXd::Zero(6));
  CHECK(solver.theta() == theta_before);
  CHECK(solver.gain() == gain_before);
  CHECK(solver.steps_processed() == 2);
}

TEST_CASE("step validates observation dimensions") {
  Dictionary d = Dictionary::generate(6, 12, 3);
  IcpaSolver solver(12, 0.4);
  CHECK_THROWS_AS(solver.step(d, Eigen::VectorXd::Zero(5)), ArgumentError);
  IcpaSolver wrong(11, 0.4);
  CHECK_THROWS_AS(wrong.step(d, Eigen::VectorXd::Zero(6)), ArgumentError);
}

TEST_CASE("an empty record yields the zero presence vector") {
  Dictionary d = Dictionary::generate(6, 12, 3);
  ObservationSet empty(Eigen::MatrixXd(6, 0));
  PresenceVector pv = solve_icpa(d, empty, 0.4);
  CHECK(pv.theta.size() == 12);
  CHECK(pv.theta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("restore round-trips a snapshot and rejects corrupt state") {
  Dictionary d = Dictionary::generate(5, 9, 6);
  SynthesisResult s = synthesize(d, ActiveSet::sample(2, 9, 6), 3, 6);
  IcpaSolver solver(9, 0.7);
  for (int t = 0; t < 3; ++t) solver.step(d, s.observations.matrix().col(t));

  IcpaSolver copy =
      IcpaSolver::restore(solver.theta(), solver.gain(), solver.steps_processed());
  CHECK(copy.theta() == solver.theta());
  CHECK(copy.gain() == solver.gain());
  CHECK(copy.steps_processed() == 3);

  // the copy keeps evolving identically
  SynthesisResult more = synthesize(d, ActiveSet::sample(2, 9, 6), 1, 7);
  IcpaSolver fresh =
      IcpaSolver::restore(solver.theta(), solver.gain(), solver.steps_processed());
  solver.step(d, more.observations.matrix().col(0));
  fresh.step(d, more.observations.matrix().col(0));
  CHECK(solver.theta() == fresh.theta());

  Eigen::MatrixXd asym = copy.gain();
  asym(0, 1) += 1.0;
  CHECK_THROWS_AS((void)IcpaSolver::restore(copy.theta(), asym, 3),
                  ArgumentError);
  CHECK_THROWS_AS(
      (void)IcpaSolver::restore(Eigen::VectorXd::Zero(4), copy.gain(), 3),
      ArgumentError);
  CHECK_THROWS_AS((void)IcpaSolver::restore(copy.theta(), copy.gain(), -1),
                  ArgumentError);
  Eigen::VectorXd nan_theta = copy.theta();
  nan_theta(0) = std::nan("");
  CHECK_THROWS_AS((void)IcpaSolver::restore(nan_theta, copy.gain(), 3),
                  ArgumentError);
}

TEST_CASE("gain stays symmetric over many steps") {
  Dictionary d = Dictionary::generate(10, 30, 12);
  SynthesisResult s = synthesize(d, ActiveSet::sample(3, 30, 12), 40, 12);
  ObservationSet obs = add_noise(s.observations, 0.2, 12);
  IcpaSolver solver(30, 0.1);
  for (int t = 0; t < 40; ++t) solver.step(d, obs.matrix().col(t));
  const Eigen::MatrixXd& g = solver.gain();
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
