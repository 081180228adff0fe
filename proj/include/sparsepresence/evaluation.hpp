#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsepresence/signal_model.hpp"

namespace spres {

// Detection quality of one trial. threshold is NaN when the result did not
// come from a threshold scan.
struct PRFResult {
  double precision;
  double recall;
  double f_measure;
  double threshold;
};

// Precision, recall, and F-measure of a detected index set against the true
// active set. Duplicate detected indices are collapsed. Conventions:
// empty detected set has precision 0 (recall 0 unless truth is also empty);
// empty truth has recall 1; both empty gives F = 1.
PRFResult f_measure(const std::vector<int>& detected, const ActiveSet& truth);

// Scans detection thresholds over the absolute scores and returns the best
// achievable F-measure. Candidate thresholds are the midpoints between
// consecutive distinct absolute scores plus one below the minimum and one
// above the maximum; detection at threshold thr is {i : |score_i| > thr}.
// Ties prefer the higher threshold (the smaller detected set).
PRFResult best_threshold_f(const Eigen::VectorXd& scores,
                           const ActiveSet& truth);

// Mean and sample standard deviation (n - 1 denominator; 0 when n = 1).
struct TrialStats {
  double mean;
  double stddev;
  int n;
};
TrialStats aggregate_trials(const std::vector<double>& f_values);

// Concentration profile of a score vector (absolute values):
//   support_fraction - share of entries above 10% of the peak
//   peak_score       - largest absolute score
//   l1_l2_ratio      - sum|s| / (sqrt(M) ||s||), 1/sqrt(M) for a one-hot
//                      vector, 1 for a constant one.
// An all-zero score vector is degenerate.
struct DensityReport {
  double support_fraction;
  double peak_score;
  double l1_l2_ratio;
};
DensityReport density_report(const Eigen::VectorXd& scores);

}  // namespace spres
