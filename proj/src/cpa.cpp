#include "sparsepresence/cpa.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "sparsepresence/errors.hpp"

namespace spres {

namespace {

void check_observation(const Dictionary& dict, const ObservationSet& obs,
                       const char* who) {
  if (obs.n_dims() != dict.n_dims())
    throw ArgumentError(std::string(who) + ": observation dimension " +
                        std::to_string(obs.n_dims()) +
                        " does not match dictionary dimension " +
                        std::to_string(dict.n_dims()));
  if (obs.n_steps() < 1)
    throw ArgumentError(std::string(who) + ": empty observation record");
}

// Normal matrix of the stacked projection system without forming it:
// with c_t = B^T y(t) the projection matrix is phi(t) = B diag(c_t), so
// Phi^T Phi = (B^T B) o (C C^T)  (entrywise product, C = [c_1 ... c_T])
// Phi^T Y  = sum_t c_t o c_t.
void normal_equations(const Dictionary& dict, const Eigen::MatrixXd& corr,
                      Eigen::MatrixXd& a, Eigen::VectorXd& b) {
  a.noalias() = corr * corr.transpose();
  Eigen::MatrixXd gram;
  gram.noalias() = dict.atoms().transpose() * dict.atoms();
  a.array() *= gram.array();
  b = corr.array().square().rowwise().sum();
}

}  // namespace

Eigen::MatrixXd projection_matrix(const Dictionary& dict,
                                  const Eigen::VectorXd& y) {
  if (y.size() != dict.n_dims())
    throw ArgumentError("projection_matrix: observation dimension mismatch");
  if (!y.allFinite())
    throw ArgumentError("projection_matrix: non-finite observation");
  const Eigen::VectorXd c = dict.atoms().transpose() * y;
  return dict.atoms() * c.asDiagonal();
}

Eigen::MatrixXd stack_projections(const Dictionary& dict,
                                  const ObservationSet& obs) {
  check_observation(dict, obs, "stack_projections");
  const Eigen::Index n = dict.n_dims();
  const Eigen::Index m = dict.n_atoms();
  const Eigen::Index steps = obs.n_steps();
  Eigen::MatrixXd stacked(steps * n, m);
  for (Eigen::Index t = 0; t < steps; ++t) {
    const Eigen::VectorXd c = dict.atoms().transpose() * obs.matrix().col(t);
    stacked.middleRows(t * n, n).noalias() = dict.atoms() * c.asDiagonal();
  }
  return stacked;
}

PresenceVector solve_cpa_batch(const Dictionary& dict,
                               const ObservationSet& obs,
                               const CpaOptions& options) {
  check_observation(dict, obs, "solve_cpa_batch");
  const Eigen::Index m = dict.n_atoms();
  const Eigen::Index stacked_rows =
      static_cast<Eigen::Index>(obs.n_steps()) * dict.n_dims();
  if (stacked_rows < m)
    throw UnderdeterminedError(
        "solve_cpa_batch: stacked system has " + std::to_string(stacked_rows) +
        " equations for " + std::to_string(m) +
        " atoms; use solve_cpa_regularized");

  const Eigen::MatrixXd corr = dict.atoms().transpose() * obs.matrix();
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  normal_equations(dict, corr, a, b);

  // The normal matrix is positive semidefinite by construction, so a failed
  // factorization or a vanishing pivot both mean rank deficiency, not a
  // generic numerical fault. The pivot ratio also catches semidefinite
  // matrices that the 1-norm rcond estimate misses (its solve treats zero
  // pivots as a pseudo-inverse).
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  const auto singular = [&](const char* what) {
    return SingularityError(std::string("solve_cpa_batch: ") + what +
                            " (threshold " +
                            std::to_string(options.rcond_threshold) + ")");
  };
  if (ldlt.info() != Eigen::Success)
    throw singular("normal matrix is rank deficient");
  const Eigen::VectorXd d = ldlt.vectorD();
  const double pivot_max = d.maxCoeff();
  const double pivot_min = std::max(0.0, d.minCoeff());
  if (!(pivot_max > 0.0) ||
      !(pivot_min > pivot_max * options.rcond_threshold))
    throw singular("normal matrix is numerically singular");
  if (!(ldlt.rcond() > options.rcond_threshold))
    throw singular("normal matrix is numerically singular");
  return PresenceVector{ldlt.solve(b)};
}

PresenceVector solve_cpa_regularized(const Dictionary& dict,
                                     const ObservationSet& obs,
                                     double lambda) {
  check_observation(dict, obs, "solve_cpa_regularized");
  if (!(lambda > 0.0))
    throw ArgumentError("solve_cpa_regularized: lambda must be positive");
  const Eigen::Index n = dict.n_dims();
  const Eigen::Index m = dict.n_atoms();
  const Eigen::Index steps = obs.n_steps();
  const Eigen::Index stacked_rows = steps * n;

  // The ridge solution has a primal form in the M presence unknowns and a
  // dual form in the T*N stacked equations; both are exact. Pick by cost.
  const double primal_cost =
      static_cast<double>(m) * m * (n + steps) + std::pow(m, 3) / 3.0;
  const double dual_cost =
      static_cast<double>(stacked_rows) * stacked_rows * m +
      std::pow(static_cast<double>(stacked_rows), 3) / 3.0;
  const bool use_dual = stacked_rows < m && dual_cost < primal_cost &&
                        static_cast<double>(stacked_rows) * m <= 4e7;

  if (use_dual) {
    const Eigen::MatrixXd stacked = stack_projections(dict, obs);
    Eigen::MatrixXd k(stacked_rows, stacked_rows);
    k.noalias() = stacked * stacked.transpose();
    k.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
      throw NumericalError("solve_cpa_regularized: factorization failed");
    const Eigen::VectorXd y = stack_observations(obs);
    return PresenceVector{stacked.transpose() * llt.solve(y)};
  }

  const Eigen::MatrixXd corr = dict.atoms().transpose() * obs.matrix();
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  normal_equations(dict, corr, a, b);
  a.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) return PresenceVector{llt.solve(b)};
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("solve_cpa_regularized: factorization failed");
  return PresenceVector{ldlt.solve(b)};
}

Eigen::MatrixXd solve_ridge_amplitudes(const Dictionary& dict,
                                       const ObservationSet& obs,
                                       double lambda) {
  check_observation(dict, obs, "solve_ridge_amplitudes");
  if (!(lambda > 0.0))
    throw ArgumentError("solve_ridge_amplitudes: lambda must be positive");
  // Dual form: (B^T B + lambda I)^-1 B^T y = B^T (B B^T + lambda I)^-1 y,
  // one N x N factorization shared across all steps.
  const Eigen::Index n = dict.n_dims();
  Eigen::MatrixXd k(n, n);
  k.noalias() = dict.atoms() * dict.atoms().transpose();
  k.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve_ridge_amplitudes: factorization failed");
  return (dict.atoms().transpose() * llt.solve(obs.matrix())).transpose();
}

}  // namespace spres
