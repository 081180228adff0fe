#include "sparsepresence/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "sparsepresence/errors.hpp"

namespace spres {

namespace {

PRFResult prf_from_counts(std::size_t tp, std::size_t n_detected,
                          std::size_t n_truth) {
  PRFResult r{};
  r.threshold = std::numeric_limits<double>::quiet_NaN();
  if (n_detected == 0 && n_truth == 0) {
    r.precision = 1.0;
    r.recall = 1.0;
    r.f_measure = 1.0;
    return r;
  }
  r.precision = n_detected == 0
                    ? 0.0
                    : static_cast<double>(tp) / static_cast<double>(n_detected);
  r.recall = n_truth == 0
                 ? 1.0
                 : static_cast<double>(tp) / static_cast<double>(n_truth);
  const double pr = r.precision + r.recall;
  r.f_measure = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
  return r;
}

}  // namespace

PRFResult f_measure(const std::vector<int>& detected, const ActiveSet& truth) {
  std::unordered_set<int> det(detected.begin(), detected.end());
  std::unordered_set<int> tru(truth.indices().begin(), truth.indices().end());
  std::size_t tp = 0;
  for (int i : det) tp += tru.count(i);
  return prf_from_counts(tp, det.size(), tru.size());
}

PRFResult best_threshold_f(const Eigen::VectorXd& scores,
                           const ActiveSet& truth) {
  if (scores.size() < 1)
    throw ArgumentError("best_threshold_f: empty score vector");
  if (!scores.allFinite())
    throw ArgumentError("best_threshold_f: non-finite scores");
  for (int idx : truth.indices())
    if (idx >= scores.size())
      throw ArgumentError("best_threshold_f: truth index out of score range");

  const Eigen::VectorXd abs_scores = scores.cwiseAbs();
  std::vector<double> distinct(abs_scores.data(),
                               abs_scores.data() + abs_scores.size());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(distinct.front() - 1.0);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
    candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  candidates.push_back(distinct.back() + 1.0);

  std::unordered_set<int> tru(truth.indices().begin(), truth.indices().end());
  PRFResult best{};
  best.f_measure = -1.0;
  std::vector<int> detected;
  for (double thr : candidates) {
    detected.clear();
    std::size_t tp = 0;
    for (Eigen::Index i = 0; i < abs_scores.size(); ++i)
      if (abs_scores(i) > thr) {
        detected.push_back(static_cast<int>(i));
        tp += tru.count(static_cast<int>(i));
      }
    PRFResult r = prf_from_counts(tp, detected.size(), tru.size());
    r.threshold = thr;
    // >= keeps the highest qualifying threshold: candidates ascend, and a
    // higher threshold never detects more atoms.
    if (r.f_measure >= best.f_measure) best = r;
  }
  return best;
}

TrialStats aggregate_trials(const std::vector<double>& f_values) {
  if (f_values.empty())
    throw ArgumentError("aggregate_trials: no values to aggregate");
  const int n = static_cast<int>(f_values.size());
  double mean = 0.0;
  for (double v : f_values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : f_values) ss += (v - mean) * (v - mean);
  const double stddev =
      n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  return TrialStats{mean, stddev, n};
}

DensityReport density_report(const Eigen::VectorXd& scores) {
  if (scores.size() < 1)
    throw ArgumentError("density_report: empty score vector");
  if (!scores.allFinite())
    throw ArgumentError("density_report: non-finite scores");
  const Eigen::VectorXd a = scores.cwiseAbs();
  const double peak = a.maxCoeff();
  if (peak == 0.0)
    throw DegeneracyError("density_report: all-zero score vector");
  const double m = static_cast<double>(a.size());
  DensityReport r{};
  r.peak_score = peak;
  r.support_fraction =
      static_cast<double>((a.array() > 0.1 * peak).count()) / m;
  r.l1_l2_ratio = a.sum() / (std::sqrt(m) * a.norm());
  return r;
}

}  // namespace spres
