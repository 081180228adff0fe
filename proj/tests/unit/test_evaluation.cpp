#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sparsepresence/errors.hpp"
#include "sparsepresence/evaluation.hpp"
#include "sparsepresence/rng.hpp"

using namespace spres;

namespace {

// Oracle: every threshold-reachable detected set is a prefix of the scores
// sorted by magnitude, so scanning prefixes finds the optimum.
double exhaustive_best_f(const Eigen::VectorXd& scores, const ActiveSet& truth) {
  std::vector<int> order(static_cast<std::size_t>(scores.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(scores[a]) > std::abs(scores[b]);
  });
  double best = f_measure({}, truth).f_measure;
  std::vector<int> detected;
  for (std::size_t n = 0; n < order.size(); ++n) {
    detected.push_back(order[n]);
    if (n + 1 < order.size() &&
        std::abs(scores[order[n]]) == std::abs(scores[order[n + 1]]))
      continue;  // equal magnitudes cannot be separated by any threshold
    best = std::max(best, f_measure(detected, truth).f_measure);
  }
  return best;
}

}  // namespace

TEST_CASE("precision, recall, and F follow the counting definitions") {
  PRFResult r = f_measure({1}, ActiveSet({1, 2}, 10));
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 0.5);
  CHECK(r.f_measure == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  r = f_measure({0, 1}, ActiveSet({1, 2}, 10));
  CHECK(r.precision == 0.5);
  CHECK(r.recall == 0.5);
  CHECK(r.f_measure == 0.5);

  // duplicates collapse
  r = f_measure({1, 1, 1}, ActiveSet({1, 2}, 10));
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 0.5);
}

TEST_CASE("empty-set conventions") {
  CHECK(f_measure({}, ActiveSet()).f_measure == 1.0);
  CHECK(f_measure({}, ActiveSet()).precision == 1.0);
  CHECK(f_measure({}, ActiveSet()).recall == 1.0);

  PRFResult none_found = f_measure({}, ActiveSet({3}, 10));
  CHECK(none_found.precision == 0.0);
  CHECK(none_found.f_measure == 0.0);

  PRFResult spurious = f_measure({3}, ActiveSet());
  CHECK(spurious.recall == 1.0);
  CHECK(spurious.precision == 0.0);
  CHECK(spurious.f_measure == 0.0);
}

TEST_CASE("threshold scan finds the separating threshold") {
  Eigen::VectorXd scores(4);
  scores << 0.9, 0.8, 0.1, 0.05;
  PRFResult r = best_threshold_f(scores, ActiveSet({0, 1}, 4));
  CHECK(r.f_measure == 1.0);
  CHECK(r.threshold == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
}

TEST_CASE("threshold scan uses magnitudes, not signed scores") {
  Eigen::VectorXd scores(2);
  scores << -0.9, 0.2;
  PRFResult r = best_threshold_f(scores, ActiveSet({0}, 2));
  CHECK(r.f_measure == 1.0);
  // only atom 0 clears the winning threshold
  CHECK(std::abs(scores[0]) > r.threshold);
  CHECK(std::abs(scores[1]) < r.threshold);
}

TEST_CASE("equal-F ties resolve to the smaller detected set") {
  // detecting {0} and detecting everything both give F = 2/3
  Eigen::VectorXd scores(4);
  scores << 0.9, 0.1, 0.5, 0.45;
  PRFResult r = best_threshold_f(scores, ActiveSet({0, 1}, 4));
  CHECK(r.f_measure == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.threshold == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(r.precision == 1.0);  // the smaller set {0} was chosen
  CHECK(r.recall == 0.5);
}

TEST_CASE("scan beats or ties every prefix of the sorted magnitudes") {
  Rng rng(31, RngStream::dictionary);
  for (int instance = 0; instance < 60; ++instance) {
    const int m = 3 + rng.uniform_int(18);  // up to 20 atoms
    Eigen::VectorXd scores(m);
    for (int i = 0; i < m; ++i)
      scores[i] = rng.gaussian() * (rng.uniform() < 0.2 ? 0.0 : 1.0);
    const int k = 1 + rng.uniform_int(std::max(1, m / 2));
    std::vector<int> picks = rng.sample_distinct(k, m);
    std::sort(picks.begin(), picks.end());
    ActiveSet truth_sorted(picks, m);

    PRFResult r = best_threshold_f(scores, truth_sorted);
    const double oracle = exhaustive_best_f(scores, truth_sorted);
    CHECK(r.f_measure == doctest::Approx(oracle).epsilon(1e-12));

    // the reported threshold reproduces the reported F
    std::vector<int> detected;
    for (int i = 0; i < m; ++i)
      if (std::abs(scores[i]) > r.threshold) detected.push_back(i);
    CHECK(f_measure(detected, truth_sorted).f_measure ==
          doctest::Approx(r.f_measure).epsilon(1e-12));
  }
}

TEST_CASE("threshold scan rejects malformed inputs") {
  Eigen::VectorXd empty(0);
  CHECK_THROWS_AS((void)best_threshold_f(empty, ActiveSet()), ArgumentError);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS((void)best_threshold_f(bad, ActiveSet({0}, 2)),
                  ArgumentError);
  Eigen::VectorXd ok(2);
  ok << 1.0, 0.5;
  CHECK_THROWS_AS((void)best_threshold_f(ok, ActiveSet({2}, 3)),
                  ArgumentError);  // truth index beyond the score vector
}

TEST_CASE("trial aggregation uses the sample deviation") {
  TrialStats s = aggregate_trials({0.0, 1.0});
  CHECK(s.mean == 0.5);
  CHECK(s.stddev == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(s.n == 2);

  s = aggregate_trials({0.25});
  CHECK(s.mean == 0.25);
  CHECK(s.stddev == 0.0);
  CHECK(s.n == 1);

  CHECK_THROWS_AS((void)aggregate_trials({}), ArgumentError);
}

TEST_CASE("density report summarizes score concentration") {
  Eigen::VectorXd s(5);
  s << 1.0, 0.05, 0.05, 0.05, -2.0;
  DensityReport d = density_report(s);
  CHECK(d.peak_score == 2.0);
  CHECK(d.support_fraction == doctest::Approx(0.4).epsilon(1e-15));
  const double l1 = 1.0 + 3 * 0.05 + 2.0;
  const double l2 = std::sqrt(1.0 + 3 * 0.0025 + 4.0);
  CHECK(d.l1_l2_ratio ==
        doctest::Approx(l1 / (std::sqrt(5.0) * l2)).epsilon(1e-12));

  // one-hot and constant extremes
  Eigen::VectorXd onehot = Eigen::VectorXd::Zero(16);
  onehot[3] = 5.0;
  CHECK(density_report(onehot).l1_l2_ratio ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(density_report(onehot).support_fraction ==
        doctest::Approx(1.0 / 16).epsilon(1e-15));
  Eigen::VectorXd flat = Eigen::VectorXd::Ones(9);
  CHECK(density_report(flat).l1_l2_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(density_report(flat).support_fraction == 1.0);
}

TEST_CASE("density report rejects degenerate scores") {
  CHECK_THROWS_AS((void)density_report(Eigen::VectorXd()), ArgumentError);
  CHECK_THROWS_AS((void)density_report(Eigen::VectorXd::Zero(4)),
                  DegeneracyError);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)density_report(bad), ArgumentError);
}
