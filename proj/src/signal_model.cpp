#include "sparsepresence/signal_model.hpp"

#include <cmath>
#include <string>

#include "sparsepresence/errors.hpp"
#include "sparsepresence/rng.hpp"

namespace spres {

ActiveSet::ActiveSet(std::vector<int> indices, int n_atoms)
    : indices_(std::move(indices)) {
  std::vector<bool> seen(static_cast<std::size_t>(n_atoms), false);
  for (int idx : indices_) {
    if (idx < 0 || idx >= n_atoms)
      throw ArgumentError("ActiveSet: index " + std::to_string(idx) +
                          " out of range [0, " + std::to_string(n_atoms) +
                          ")");
    if (seen[static_cast<std::size_t>(idx)])
      throw ArgumentError("ActiveSet: duplicate index " + std::to_string(idx));
    seen[static_cast<std::size_t>(idx)] = true;
  }
}

ActiveSet ActiveSet::sample(int k, int n_atoms, std::uint64_t seed) {
  if (n_atoms < 1) throw ArgumentError("ActiveSet::sample: empty dictionary");
  Rng rng(seed, RngStream::active_set);
  return ActiveSet(rng.sample_distinct(k, n_atoms), n_atoms);
}

ObservationSet::ObservationSet(Eigen::MatrixXd observations)
    : obs_(std::move(observations)) {
  if (obs_.rows() < 1)
    throw ArgumentError("ObservationSet: n_dims must be positive");
  if (!obs_.allFinite())
    throw ArgumentError("ObservationSet: non-finite entries");
}

ObservationSet render(const Dictionary& dict, const ActiveSet& active,
                      const Eigen::MatrixXd& amplitudes) {
  const int k = active.k();
  if (amplitudes.cols() != k)
    throw ArgumentError("render: amplitude columns must match active set size");
  for (int idx : active.indices())
    if (idx >= dict.n_atoms())
      throw ArgumentError("render: active index out of dictionary range");
  const Eigen::Index n_steps = amplitudes.rows();
  Eigen::MatrixXd obs = Eigen::MatrixXd::Zero(dict.n_dims(), n_steps);
  for (int l = 0; l < k; ++l)
    obs.noalias() +=
        dict.atoms().col(active.indices()[static_cast<std::size_t>(l)]) *
        amplitudes.col(l).transpose();
  return ObservationSet(std::move(obs));
}

SynthesisResult synthesize(const Dictionary& dict, const ActiveSet& active,
                           int n_steps, std::uint64_t seed, double amp_std) {
  if (n_steps < 0) throw ArgumentError("synthesize: n_steps must be >= 0");
  if (!(amp_std >= 0.0))
    throw ArgumentError("synthesize: amp_std must be non-negative");
  Rng rng(seed, RngStream::amplitudes);
  Eigen::MatrixXd amps(n_steps, active.k());
  for (Eigen::Index t = 0; t < n_steps; ++t)
    for (Eigen::Index l = 0; l < active.k(); ++l)
      amps(t, l) = amp_std * rng.gaussian();
  return SynthesisResult{render(dict, active, amps), AmplitudeSeries{amps}};
}

ObservationSet add_noise(const ObservationSet& obs, double ratio,
                         std::uint64_t seed) {
  if (!(ratio >= 0.0)) throw ArgumentError("add_noise: ratio must be >= 0");
  if (ratio == 0.0 || obs.n_steps() == 0) return obs;
  const Eigen::MatrixXd& y = obs.matrix();
  if ((y.array() == 0.0).all())
    throw DegeneracyError(
        "add_noise: all-zero signal, noise scale is undefined");
  // Signal scale: standard deviation over all T*N components of the record.
  const double mean = y.mean();
  const double sigma =
      std::sqrt((y.array() - mean).square().sum() / static_cast<double>(y.size()));
  const double noise_std = ratio * sigma;
  Rng rng(seed, RngStream::noise);
  Eigen::MatrixXd out = y;
  for (Eigen::Index t = 0; t < out.cols(); ++t)
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      out(i, t) += noise_std * rng.gaussian();
  return ObservationSet(std::move(out));
}

Eigen::VectorXd make_novel_atom(int n_dims, std::uint64_t seed) {
  if (n_dims < 1)
    throw ArgumentError("make_novel_atom: n_dims must be positive");
  Rng rng(seed, RngStream::novel_atom);
  Eigen::VectorXd v(n_dims);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n_dims; ++i) v(i) = rng.gaussian();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

ObservationSet inject_novel_atom(const ObservationSet& obs,
                                 const NovelAtomSpec& novel,
                                 std::uint64_t seed) {
  if (novel.atom.size() != obs.n_dims())
    throw ArgumentError("inject_novel_atom: atom dimension mismatch");
  if (!(novel.amplitude_std > 0.0))
    throw ArgumentError("inject_novel_atom: amplitude_std must be positive");
  if (std::abs(novel.atom.norm() - 1.0) > 1e-12)
    throw ArgumentError("inject_novel_atom: atom must have unit norm");
  if (obs.n_steps() == 0) return obs;
  Rng rng(seed, RngStream::novel_atom, /*salt=*/1);
  Eigen::MatrixXd out = obs.matrix();
  for (Eigen::Index t = 0; t < out.cols(); ++t)
    out.col(t) += (novel.amplitude_std * rng.gaussian()) * novel.atom;
  return ObservationSet(std::move(out));
}

Eigen::VectorXd stack_observations(const ObservationSet& obs) {
  if (obs.n_steps() == 0)
    throw ArgumentError("stack_observations: empty record");
  return obs.matrix().reshaped();
}

ObservationSet unstack_observations(const Eigen::VectorXd& stacked,
                                    int n_dims) {
  if (n_dims < 1)
    throw ArgumentError("unstack_observations: n_dims must be positive");
  if (stacked.size() == 0 || stacked.size() % n_dims != 0)
    throw ArgumentError(
        "unstack_observations: length is not a positive multiple of n_dims");
  const Eigen::Index n_steps = stacked.size() / n_dims;
  return ObservationSet(stacked.reshaped(n_dims, n_steps));
}

}  // namespace spres
