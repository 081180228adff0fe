#pragma once

#include <Eigen/Dense>

#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/signal_model.hpp"

namespace spres {

// Presence estimate: one scalar per atom, near 1 for atoms active in the
// record and near 0 for inactive ones.
struct PresenceVector {
  Eigen::VectorXd theta;
};

// Projection matrix for one observation: column i is (B_i . y) B_i, the
// rough estimate of atom i's contribution redistributed along the atom.
Eigen::MatrixXd projection_matrix(const Dictionary& dict,
                                  const Eigen::VectorXd& y);

// Stacks the per-observation projection matrices into the (T*N) x M system
// whose least-squares solution is the presence vector. Requires T >= 1.
Eigen::MatrixXd stack_projections(const Dictionary& dict,
                                  const ObservationSet& obs);

struct CpaOptions {
  // Reciprocal-condition gate for the unregularized normal equations.
  double rcond_threshold = 1e-12;
};

// Batch presence estimate: least-squares solution of the stacked projection
// system. Requires T*N >= n_atoms; throws SingularityError when the normal
// matrix is numerically singular.
PresenceVector solve_cpa_batch(const Dictionary& dict,
                               const ObservationSet& obs,
                               const CpaOptions& options = {});

// Ridge-regularized presence estimate, defined for any T >= 1. lambda > 0.
PresenceVector solve_cpa_regularized(const Dictionary& dict,
                                     const ObservationSet& obs,
                                     double lambda);

// Ridge estimate of per-step atom amplitudes (the rough estimate CPA
// corrects). Returns n_steps x n_atoms; row t estimates all atom amplitudes
// for observation t. lambda > 0.
Eigen::MatrixXd solve_ridge_amplitudes(const Dictionary& dict,
                                       const ObservationSet& obs,
                                       double lambda);

}  // namespace spres
