#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

namespace spres {

// Overcomplete dictionary: n_dims x n_atoms matrix whose columns (atoms)
// all have unit L2 norm. Immutable after construction.
class Dictionary {
 public:
  // Takes ownership of the atom matrix. Throws ArgumentError if the matrix
  // is empty, has non-finite entries, or any column norm deviates from 1
  // by more than 1e-12.
  explicit Dictionary(Eigen::MatrixXd atoms);

  // Random dictionary: i.i.d. standard normal entries, columns normalized.
  // Draws from the dictionary substream of `seed`, atom by atom; an all-zero
  // draw (probability zero, but defined) is redrawn.
  static Dictionary generate(int n_dims, int n_atoms, std::uint64_t seed);

  int n_dims() const { return static_cast<int>(atoms_.rows()); }
  int n_atoms() const { return static_cast<int>(atoms_.cols()); }
  const Eigen::MatrixXd& atoms() const { return atoms_; }
  Eigen::VectorXd atom(int i) const;

  // Inner product of atoms i and j. atom_inner(i, i) is 1 up to rounding.
  double atom_inner(int i, int j) const;

  // Replaces the selected columns with an orthonormal set spanning the same
  // subspace (sequential projection with re-orthogonalization); all other
  // columns are untouched. Throws DegeneracyError when the selection is
  // linearly dependent within tolerance 1e-10, ArgumentError on bad indices.
  Dictionary orthogonalize_subset(std::span<const int> indices) const;

 private:
  Eigen::MatrixXd atoms_;
};

// Largest absolute inner product over distinct atom pairs, with one argmax
// pair. Requires at least two atoms. Runs blockwise: the full Gram matrix is
// never materialized.
struct CoherenceReport {
  double coherence;
  int atom_i;
  int atom_j;
};
CoherenceReport mutual_coherence(const Dictionary& dict);

// Observation-count threshold 4 k^2 ln(n_atoms) above which presence
// estimates separate active from inactive atoms. Natural logarithm.
double cpa_dimension_bound(int k, int n_atoms);

// Classical sparse-recovery observation count k ln(n_atoms / k) for
// comparison against cpa_dimension_bound.
double rip_dimension_bound(int k, int n_atoms);

}  // namespace spres
