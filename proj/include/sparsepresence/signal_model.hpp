#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sparsepresence/dictionary.hpp"

namespace spres {

// Ordered list of distinct atom indices, validated against a dictionary size.
class ActiveSet {
 public:
  ActiveSet() = default;
  ActiveSet(std::vector<int> indices, int n_atoms);

  // k distinct indices drawn uniformly from [0, n_atoms), in draw order,
  // from the active-set substream of `seed`.
  static ActiveSet sample(int k, int n_atoms, std::uint64_t seed);

  int k() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }

 private:
  std::vector<int> indices_;
};

// Per-step amplitudes for the active atoms: n_steps x k, row t holds the
// amplitudes A_l(t) in active-set order.
struct AmplitudeSeries {
  Eigen::MatrixXd values;
};

// A record of T observations. Column t of the matrix is y(t), an
// n_dims-vector. T = 0 is a valid (empty) record.
class ObservationSet {
 public:
  explicit ObservationSet(Eigen::MatrixXd observations);

  int n_dims() const { return static_cast<int>(obs_.rows()); }
  int n_steps() const { return static_cast<int>(obs_.cols()); }
  const Eigen::MatrixXd& matrix() const { return obs_; }

 private:
  Eigen::MatrixXd obs_;
};

// Unit-norm direction outside the dictionary plus the amplitude scale of its
// contribution.
struct NovelAtomSpec {
  Eigen::VectorXd atom;
  double amplitude_std;
};

struct SynthesisResult {
  ObservationSet observations;
  AmplitudeSeries amplitudes;
};

// Deterministic part of the signal model: y(t) = sum_l A_l(t) B_{active(l)}.
// amplitudes must be n_steps x k in active-set order.
ObservationSet render(const Dictionary& dict, const ActiveSet& active,
                      const Eigen::MatrixXd& amplitudes);

// Draws A_l(t) ~ N(0, amp_std^2) from the amplitude substream of `seed`
// (t-major, then atom) and renders. An empty active set yields an all-zero
// record.
SynthesisResult synthesize(const Dictionary& dict, const ActiveSet& active,
                           int n_steps, std::uint64_t seed,
                           double amp_std = 1.0);

// Adds white Gaussian noise with standard deviation ratio * std(signal),
// where std(signal) is taken over all T*N components of the record.
// ratio = 0 returns the input unchanged. All-zero input with ratio > 0 is
// degenerate (the noise scale is undefined).
ObservationSet add_noise(const ObservationSet& obs, double ratio,
                         std::uint64_t seed);

// Unit-norm random direction from the novel-atom substream of `seed`.
Eigen::VectorXd make_novel_atom(int n_dims, std::uint64_t seed);

// Adds a(t) * atom to every observation, a(t) ~ N(0, amplitude_std^2) drawn
// from the novel-atom substream (salt 1) of `seed`. An empty record is
// returned unchanged.
ObservationSet inject_novel_atom(const ObservationSet& obs,
                                 const NovelAtomSpec& novel,
                                 std::uint64_t seed);

// Concatenates observations into the stacked T*N vector (y(1); ...; y(T)).
// Requires a non-empty record.
Eigen::VectorXd stack_observations(const ObservationSet& obs);

// Inverse of stack_observations. The stacked length must be a multiple of
// n_dims.
ObservationSet unstack_observations(const Eigen::VectorXd& stacked,
                                    int n_dims);

}  // namespace spres
