#include "sparsepresence/baselines.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "sparsepresence/errors.hpp"

namespace spres {

namespace {

void check_inputs(const Dictionary& dict, const ObservationSet& obs,
                  const char* who) {
  if (obs.n_dims() != dict.n_dims())
    throw ArgumentError(std::string(who) + ": observation dimension " +
                        std::to_string(obs.n_dims()) +
                        " does not match dictionary dimension " +
                        std::to_string(dict.n_dims()));
  if (obs.n_steps() < 1)
    throw ArgumentError(std::string(who) + ": empty observation record");
}

constexpr double kResidualStopRatio = 1e-12;

}  // namespace

MmvCoefficients solve_mbmp(const Dictionary& dict, const ObservationSet& obs,
                           int max_iters) {
  check_inputs(dict, obs, "solve_mbmp");
  if (max_iters < 1)
    throw ArgumentError("solve_mbmp: max_iters must be positive");

  const Eigen::Index m = dict.n_atoms();
  const Eigen::Index steps = obs.n_steps();
  MmvCoefficients out;
  out.values = Eigen::MatrixXd::Zero(m, steps);
  Eigen::MatrixXd residual = obs.matrix();
  const double signal_norm = residual.norm();
  const double stop_norm = kResidualStopRatio * signal_norm;

  while (out.iterations < max_iters && residual.norm() > stop_norm) {
    const Eigen::MatrixXd corr = dict.atoms().transpose() * residual;
    Eigen::Index best = 0;
    // maxCoeff keeps the first occurrence, which is the lowest index.
    const double best_norm = corr.rowwise().norm().maxCoeff(&best);
    if (best_norm == 0.0) break;  // residual orthogonal to every atom
    out.values.row(best) += corr.row(best);
    residual.noalias() -= dict.atoms().col(best) * corr.row(best);
    ++out.iterations;
    out.objective_history.push_back(residual.norm());
  }
  return out;
}

MmvCoefficients solve_mfocuss(const Dictionary& dict,
                              const ObservationSet& obs,
                              const MfocussParams& params) {
  check_inputs(dict, obs, "solve_mfocuss");
  if (!(params.lambda > 0.0))
    throw ArgumentError("solve_mfocuss: lambda must be positive");
  if (!(params.p_norm > 0.0) || params.p_norm > 1.0)
    throw ArgumentError("solve_mfocuss: p_norm must lie in (0, 1]");
  if (!(params.epsilon > 0.0))
    throw ArgumentError("solve_mfocuss: epsilon must be positive");
  if (!(params.prune_gamma > 0.0))
    throw ArgumentError("solve_mfocuss: prune_gamma must be positive");
  if (params.max_iters < 1)
    throw ArgumentError("solve_mfocuss: max_iters must be positive");

  const Eigen::Index n = dict.n_dims();
  const Eigen::Index m = dict.n_atoms();
  const Eigen::Index steps = obs.n_steps();
  const double weight_exp = 1.0 - params.p_norm / 2.0;

  std::vector<Eigen::Index> active(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) active[static_cast<std::size_t>(i)] = i;
  // Initial row norms are 1, so the first pass solves plain ridge regression.
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(m);

  MmvCoefficients out;
  out.values = Eigen::MatrixXd::Zero(m, steps);
  out.converged = false;
  Eigen::MatrixXd prev = out.values;

  while (out.iterations < params.max_iters) {
    const Eigen::Index na = static_cast<Eigen::Index>(active.size());
    if (na == 0) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd aw(n, na);
    for (Eigen::Index c = 0; c < na; ++c)
      aw.col(c) = dict.atoms().col(active[static_cast<std::size_t>(c)]) *
                  weights(active[static_cast<std::size_t>(c)]);
    Eigen::MatrixXd k(n, n);
    k.noalias() = aw * aw.transpose();
    k.diagonal().array() += params.lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
      throw NumericalError("solve_mfocuss: factorization failed");
    const Eigen::MatrixXd q = aw.transpose() * llt.solve(obs.matrix());

    out.values.setZero();
    for (Eigen::Index c = 0; c < na; ++c) {
      const Eigen::Index i = active[static_cast<std::size_t>(c)];
      out.values.row(i) = weights(i) * q.row(c);
    }
    ++out.iterations;

    // The reweighted update is the majorize-minimize step for this penalty
    // weight (the concave surrogate of ||x||^p contributes the p/2 factor),
    // so this is the quantity that provably decreases between prunings.
    double objective = (obs.matrix() - dict.atoms() * out.values).squaredNorm();
    const double penalty_weight = 2.0 * params.lambda / params.p_norm;
    for (Eigen::Index i : active)
      objective +=
          penalty_weight * std::pow(out.values.row(i).norm(), params.p_norm);
    out.objective_history.push_back(objective);

    // Reweight and prune; pruned atoms never return.
    std::vector<Eigen::Index> survivors;
    survivors.reserve(active.size());
    for (Eigen::Index i : active) {
      const double w = std::pow(out.values.row(i).norm(), weight_exp);
      if (w < params.prune_gamma) {
        out.values.row(i).setZero();
      } else {
        weights(i) = w;
        survivors.push_back(i);
      }
    }
    active = std::move(survivors);
    out.active_history.push_back(static_cast<int>(active.size()));

    const double prev_norm = prev.norm();
    const double change = (out.values - prev).norm();
    if (prev_norm > 0.0 ? change < params.epsilon * prev_norm
                        : out.values.norm() == 0.0) {
      out.converged = true;
      break;
    }
    prev = out.values;
  }
  return out;
}

Eigen::VectorXd atom_scores(const MmvCoefficients& coeffs) {
  if (coeffs.values.size() == 0)
    throw ArgumentError("atom_scores: empty coefficient matrix");
  return coeffs.values.rowwise().norm();
}

}  // namespace spres
