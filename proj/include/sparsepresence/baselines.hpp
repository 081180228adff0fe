#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/signal_model.hpp"

namespace spres {

// Per-atom, per-step coefficient estimate from an MMV baseline solver.
// values is n_atoms x n_steps; row i is atom i's coefficient trajectory.
struct MmvCoefficients {
  Eigen::MatrixXd values;
  bool converged = true;
  int iterations = 0;
  // One entry per iteration. Matching pursuit records the residual Frobenius
  // norm; the reweighted solver records the regularized objective its update
  // descends, ||Y - AX||_F^2 + (2 lambda / p) sum_i ||x_i||^p. Descent is
  // exact between prunings; zeroing a pruned row perturbs the value by at
  // most its vanishing contribution to the residual.
  std::vector<double> objective_history;
  // Reweighted solver only: surviving (unpruned) atom count per iteration.
  std::vector<int> active_history;
};

// MMV basic matching pursuit. Each iteration selects the atom whose
// correlation row with the residual has the largest L2 norm over time
// (ties break to the lowest index), adds that row to the atom's
// coefficients, and subtracts the contribution from the residual. No
// orthogonalization; an atom may be selected again. Stops after max_iters
// iterations or when the residual norm falls below 1e-12 of the signal norm.
MmvCoefficients solve_mbmp(const Dictionary& dict, const ObservationSet& obs,
                           int max_iters = 200);

// Hyperparameters of the regularized reweighted-least-squares baseline.
struct MfocussParams {
  double lambda = 1e-3;      // ridge weight, > 0
  double p_norm = 0.8;       // diversity exponent, in (0, 1]
  double epsilon = 1e-8;     // relative-change convergence threshold, > 0
  double prune_gamma = 1e-4; // weight cutoff for hard pruning, > 0
  int max_iters = 500;       // >= 1
};

// MMV regularized FOCUSS. Iterates x_i <- w_i^2 a_i^T (A W^2 A^T + lambda
// I)^-1 Y with row weights w_i = ||x_i||^(1 - p/2); initial row norms are 1,
// so the first iterate is plain ridge regression. Atoms whose weight falls
// below prune_gamma are removed permanently. Convergence is declared when
// the relative coefficient change drops below epsilon; hitting max_iters
// first leaves `converged` false (not an error).
MmvCoefficients solve_mfocuss(const Dictionary& dict,
                              const ObservationSet& obs,
                              const MfocussParams& params = {});

// Per-atom detection score: L2 norm of the coefficient row over time.
Eigen::VectorXd atom_scores(const MmvCoefficients& coeffs);

}  // namespace spres
