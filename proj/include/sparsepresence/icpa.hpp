#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sparsepresence/cpa.hpp"
#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/signal_model.hpp"

namespace spres {

// Streaming presence estimator. Maintains the presence vector and the
// n_atoms x n_atoms gain matrix P; after processing observations
// y(1)..y(T) the state satisfies
//   P = (lambda I + sum_t phi(t)^T phi(t))^-1
//   theta = batch ridge solution with the same lambda,
// so each step costs one N x N factorization instead of an M x M solve.
class IcpaSolver {
 public:
  // Fresh state: theta = 0, P = (1/lambda) I. lambda > 0, n_atoms >= 1.
  IcpaSolver(int n_atoms, double lambda);

  // Folds one observation into the state. The gain update
  //   P <- P - P phi^T (I + phi P phi^T)^-1 phi P
  // runs first (solving only an N x N system), then theta is corrected
  // through the updated gain:
  //   theta <- theta + P phi^T (y - phi theta).
  // P is resymmetrized after the update to stop drift.
  void step(const Dictionary& dict, const Eigen::VectorXd& y);

  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::MatrixXd& gain() const { return gain_; }
  std::int64_t steps_processed() const { return steps_; }
  int n_atoms() const { return static_cast<int>(theta_.size()); }

  // Rebuilds a state snapshot, used by checkpoint loading. The gain matrix
  // must be symmetric within 1e-10 (relative).
  static IcpaSolver restore(Eigen::VectorXd theta, Eigen::MatrixXd gain,
                            std::int64_t steps_processed);

 private:
  IcpaSolver() = default;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd gain_;
  std::int64_t steps_ = 0;
};

// Runs the streaming estimator over a whole record. An empty record yields
// the all-zero presence vector.
PresenceVector solve_icpa(const Dictionary& dict, const ObservationSet& obs,
                          double lambda);

}  // namespace spres
