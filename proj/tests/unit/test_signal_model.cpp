#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/errors.hpp"
#include "sparsepresence/signal_model.hpp"

using namespace spres;

TEST_CASE("active sets are ordered, distinct, and bounded") {
  ActiveSet a({2, 5, 9}, 10);
  CHECK(a.k() == 3);
  CHECK(a.indices() == std::vector<int>{2, 5, 9});
  CHECK_THROWS_AS(ActiveSet({2, 2}, 10), ArgumentError);
  CHECK(ActiveSet({5, 2}, 10).indices() == std::vector<int>{5, 2});  // draw order kept
  CHECK_THROWS_AS(ActiveSet({-1}, 10), ArgumentError);
  CHECK_THROWS_AS(ActiveSet({10}, 10), ArgumentError);
  CHECK(ActiveSet().k() == 0);
}

TEST_CASE("sampled active sets are reproducible and in range") {
  ActiveSet a = ActiveSet::sample(5, 100, 42);
  ActiveSet b = ActiveSet::sample(5, 100, 42);
  CHECK(a.indices() == b.indices());
  CHECK(a.k() == 5);
  for (int i : a.indices()) {
    CHECK(i >= 0);
    CHECK(i < 100);
  }
  ActiveSet c = ActiveSet::sample(5, 100, 43);
  CHECK(a.indices() != c.indices());
}

TEST_CASE("render reproduces a two-atom combination exactly") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 3);
  Dictionary d{m};
  ActiveSet active({0, 2}, 3);
  Eigen::MatrixXd amps(2, 2);  // T=2 rows, k=2 cols
  amps << 1.5, -2.0, 0.25, 4.0;
  ObservationSet obs = render(d, active, amps);
  CHECK(obs.n_dims() == 4);
  CHECK(obs.n_steps() == 2);
  CHECK(obs.matrix()(0, 0) == 1.5);
  CHECK(obs.matrix()(2, 0) == -2.0);
  CHECK(obs.matrix()(0, 1) == 0.25);
  CHECK(obs.matrix()(2, 1) == 4.0);
  CHECK(obs.matrix()(1, 0) == 0.0);
  CHECK(obs.matrix()(3, 1) == 0.0);

  // superposition: rendering summed amplitudes = summing rendered records
  Eigen::MatrixXd amps2 = 2.0 * amps;
  ObservationSet obs2 = render(d, active, amps2);
  CHECK((obs2.matrix() - 2.0 * obs.matrix()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS((void)render(d, active, Eigen::MatrixXd::Zero(2, 3)),
                  ArgumentError);  // amplitude column count must equal k
}

TEST_CASE("synthesize is render applied to its own amplitude draws") {
  Dictionary d = Dictionary::generate(12, 30, 9);
  ActiveSet active = ActiveSet::sample(4, 30, 9);
  SynthesisResult s = synthesize(d, active, 6, 9);
  CHECK(s.amplitudes.values.rows() == 6);
  CHECK(s.amplitudes.values.cols() == 4);
  ObservationSet again = render(d, active, s.amplitudes.values);
  CHECK((s.observations.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("synthesize scales linearly with amp_std for a fixed seed") {
  Dictionary d = Dictionary::generate(8, 16, 4);
  ActiveSet active = ActiveSet::sample(2, 16, 4);
  SynthesisResult unit = synthesize(d, active, 5, 4, 1.0);
  SynthesisResult scaled = synthesize(d, active, 5, 4, 3.5);
  CHECK((scaled.amplitudes.values - 3.5 * unit.amplitudes.values)
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("synthesized amplitudes have unit-normal statistics") {
  Dictionary d = Dictionary::generate(4, 50, 21);
  ActiveSet active = ActiveSet::sample(40, 50, 21);
  SynthesisResult s = synthesize(d, active, 200, 21);  // 8000 draws
  const auto& a = s.amplitudes.values;
  const double mean = a.mean();
  const double var = (a.array() - mean).square().sum() / (a.size() - 1);
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("empty active set renders silence") {
  Dictionary d = Dictionary::generate(6, 10, 2);
  SynthesisResult s = synthesize(d, ActiveSet(), 3, 2);
  CHECK(s.observations.matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("add_noise matches the requested relative scale") {
  Dictionary d = Dictionary::generate(20, 40, 6);
  ActiveSet active = ActiveSet::sample(3, 40, 6);
  SynthesisResult s = synthesize(d, active, 100, 6);  // 2000 samples
  const double ratio = 0.1;
  ObservationSet noisy = add_noise(s.observations, ratio, 6);
  const Eigen::MatrixXd delta = noisy.matrix() - s.observations.matrix();

  const Eigen::MatrixXd& clean = s.observations.matrix();
  const double clean_mean = clean.mean();
  const double clean_std =
      std::sqrt((clean.array() - clean_mean).square().sum() / clean.size());
  const double noise_std =
      std::sqrt(delta.array().square().sum() / delta.size());
  CHECK(noise_std == doctest::Approx(ratio * clean_std).epsilon(0.06));
  CHECK(std::abs(delta.mean()) < 0.01 * clean_std);

  // determinism and the zero-ratio identity
  ObservationSet noisy2 = add_noise(s.observations, ratio, 6);
  CHECK(noisy.matrix() == noisy2.matrix());
  ObservationSet same = add_noise(s.observations, 0.0, 6);
  CHECK(same.matrix() == s.observations.matrix());
}

TEST_CASE("add_noise rejects impossible requests") {
  ObservationSet zero(Eigen::MatrixXd::Zero(4, 3));
  CHECK_THROWS_AS((void)add_noise(zero, 0.1, 1), DegeneracyError);
  ObservationSet some(Eigen::MatrixXd::Ones(4, 3));
  CHECK_THROWS_AS((void)add_noise(some, -0.5, 1), ArgumentError);
}

TEST_CASE("novel directions are unit norm and reproducible") {
  Eigen::VectorXd v = make_novel_atom(25, 13);
  CHECK(v.size() == 25);
  CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  CHECK(v == make_novel_atom(25, 13));
  CHECK(v != make_novel_atom(25, 14));
}

TEST_CASE("inject_novel_atom adds a rank-one contribution along the given direction") {
  Dictionary d = Dictionary::generate(10, 20, 8);
  ActiveSet active = ActiveSet::sample(2, 20, 8);
  SynthesisResult s = synthesize(d, active, 7, 8);
  Eigen::VectorXd dir = make_novel_atom(10, 8);
  ObservationSet with = inject_novel_atom(s.observations, NovelAtomSpec{dir, 2.0}, 8);
  const Eigen::MatrixXd delta = with.matrix() - s.observations.matrix();
  // every step's increment is parallel to the direction
  for (int t = 0; t < 7; ++t) {
    const Eigen::VectorXd col = delta.col(t);
    const Eigen::VectorXd residual = col - dir * dir.dot(col);
    CHECK(residual.norm() <= 1e-12 * (1.0 + col.norm()));
  }
  CHECK(delta.cwiseAbs().maxCoeff() > 0.0);

  // the injected amplitudes scale with amplitude_std for the same seed
  ObservationSet with10 =
      inject_novel_atom(s.observations, NovelAtomSpec{dir, 20.0}, 8);
  const Eigen::MatrixXd delta10 = with10.matrix() - s.observations.matrix();
  CHECK((delta10 - 10.0 * delta).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("inject_novel_atom validates its spec") {
  ObservationSet obs(Eigen::MatrixXd::Ones(4, 2));
  Eigen::VectorXd dir = make_novel_atom(4, 1);
  CHECK_THROWS_AS(
      (void)inject_novel_atom(obs, NovelAtomSpec{dir, 0.0}, 1),
      ArgumentError);
  CHECK_THROWS_AS(
      (void)inject_novel_atom(obs, NovelAtomSpec{dir * 2.0, 1.0}, 1),
      ArgumentError);
  Eigen::VectorXd wrong = make_novel_atom(5, 1);
  CHECK_THROWS_AS(
      (void)inject_novel_atom(obs, NovelAtomSpec{wrong, 1.0}, 1),
      ArgumentError);
}

TEST_CASE("stacking round-trips and orders step-major") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 4, 2, 5, 3, 6;
  ObservationSet obs{m};
  Eigen::VectorXd v = stack_observations(obs);
  CHECK(v.size() == 6);
  CHECK(v(0) == 1);
  CHECK(v(1) == 2);
  CHECK(v(2) == 3);
  CHECK(v(3) == 4);  // second step follows the first
  ObservationSet back = unstack_observations(v, 3);
  CHECK(back.matrix() == m);
  CHECK_THROWS_AS((void)unstack_observations(v, 4), ArgumentError);
}
