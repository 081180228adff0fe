#include "sparsepresence/icpa.hpp"

#include <Eigen/Cholesky>
#include <string>

#include "sparsepresence/errors.hpp"

namespace spres {

IcpaSolver::IcpaSolver(int n_atoms, double lambda) {
  if (n_atoms < 1) throw ArgumentError("IcpaSolver: n_atoms must be positive");
  if (!(lambda > 0.0)) throw ArgumentError("IcpaSolver: lambda must be positive");
  theta_ = Eigen::VectorXd::Zero(n_atoms);
  gain_ = Eigen::MatrixXd::Identity(n_atoms, n_atoms) / lambda;
  steps_ = 0;
}

IcpaSolver IcpaSolver::restore(Eigen::VectorXd theta, Eigen::MatrixXd gain,
                               std::int64_t steps_processed) {
  if (theta.size() < 1) throw ArgumentError("restore: empty presence vector");
  if (gain.rows() != theta.size() || gain.cols() != theta.size())
    throw ArgumentError("restore: gain shape does not match presence vector");
  if (steps_processed < 0)
    throw ArgumentError("restore: negative step count");
  if (!theta.allFinite() || !gain.allFinite())
    throw ArgumentError("restore: non-finite state");
  const double scale = gain.norm();
  if ((gain - gain.transpose()).norm() > 1e-10 * (scale > 0.0 ? scale : 1.0))
    throw ArgumentError("restore: gain matrix is not symmetric");
  IcpaSolver s;
  s.theta_ = std::move(theta);
  s.gain_ = std::move(gain);
  s.steps_ = steps_processed;
  return s;
}

void IcpaSolver::step(const Dictionary& dict, const Eigen::VectorXd& y) {
  if (dict.n_atoms() != n_atoms())
    throw ArgumentError("step: dictionary size does not match state");
  if (y.size() != dict.n_dims())
    throw ArgumentError("step: observation dimension mismatch");
  if (!y.allFinite()) throw ArgumentError("step: non-finite observation");

  const Eigen::Index n = dict.n_dims();
  const Eigen::VectorXd c = dict.atoms().transpose() * y;
  Eigen::MatrixXd phi(n, n_atoms());
  phi.noalias() = dict.atoms() * c.asDiagonal();

  Eigen::MatrixXd w(n, n_atoms());
  w.noalias() = phi * gain_;
  Eigen::MatrixXd s(n, n);
  s.noalias() = w * phi.transpose();
  s.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw NumericalError("step: innovation system is not positive definite");
  const Eigen::MatrixXd x = llt.solve(w);
  gain_.noalias() -= w.transpose() * x;
  // Enforce symmetry; rounding drift otherwise compounds over many steps.
  for (Eigen::Index j = 0; j < gain_.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      const double avg = 0.5 * (gain_(i, j) + gain_(j, i));
      gain_(i, j) = avg;
      gain_(j, i) = avg;
    }

  const Eigen::VectorXd residual = y - phi * theta_;
  theta_.noalias() += gain_ * (phi.transpose() * residual);
  ++steps_;
}

PresenceVector solve_icpa(const Dictionary& dict, const ObservationSet& obs,
                          double lambda) {
  if (obs.n_dims() != dict.n_dims())
    throw ArgumentError("solve_icpa: observation dimension mismatch");
  IcpaSolver solver(dict.n_atoms(), lambda);
  for (int t = 0; t < obs.n_steps(); ++t)
    solver.step(dict, obs.matrix().col(t));
  return PresenceVector{solver.theta()};
}

}  // namespace spres
