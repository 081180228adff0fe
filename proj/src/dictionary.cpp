#include "sparsepresence/dictionary.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sparsepresence/errors.hpp"
#include "sparsepresence/rng.hpp"

namespace spres {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kDependenceTol = 1e-10;

void check_atom_index(const Dictionary& d, int i, const char* who) {
  if (i < 0 || i >= d.n_atoms())
    throw ArgumentError(std::string(who) + ": atom index " + std::to_string(i) +
                        " out of range [0, " + std::to_string(d.n_atoms()) +
                        ")");
}

}  // namespace

Dictionary::Dictionary(Eigen::MatrixXd atoms) : atoms_(std::move(atoms)) {
  if (atoms_.rows() < 1 || atoms_.cols() < 1)
    throw ArgumentError("Dictionary: atom matrix must be non-empty");
  if (!atoms_.allFinite())
    throw ArgumentError("Dictionary: atom matrix has non-finite entries");
  for (Eigen::Index j = 0; j < atoms_.cols(); ++j) {
    const double norm = atoms_.col(j).norm();
    if (std::abs(norm - 1.0) > kUnitNormTol)
      throw ArgumentError("Dictionary: column " + std::to_string(j) +
                          " norm " + std::to_string(norm) + " is not unit");
  }
}

Dictionary Dictionary::generate(int n_dims, int n_atoms, std::uint64_t seed) {
  if (n_dims < 1) throw ArgumentError("generate: n_dims must be positive");
  if (n_atoms < 1) throw ArgumentError("generate: n_atoms must be positive");
  Rng rng(seed, RngStream::dictionary);
  Eigen::MatrixXd atoms(n_dims, n_atoms);
  for (Eigen::Index j = 0; j < n_atoms; ++j) {
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < n_dims; ++i) atoms(i, j) = rng.gaussian();
      norm = atoms.col(j).norm();
    } while (norm == 0.0);
    atoms.col(j) /= norm;
  }
  return Dictionary(std::move(atoms));
}

Eigen::VectorXd Dictionary::atom(int i) const {
  check_atom_index(*this, i, "atom");
  return atoms_.col(i);
}

double Dictionary::atom_inner(int i, int j) const {
  check_atom_index(*this, i, "atom_inner");
  check_atom_index(*this, j, "atom_inner");
  return atoms_.col(i).dot(atoms_.col(j));
}

Dictionary Dictionary::orthogonalize_subset(std::span<const int> indices) const {
  if (indices.empty())
    throw ArgumentError("orthogonalize_subset: empty selection");
  if (static_cast<int>(indices.size()) > n_dims())
    throw ArgumentError(
        "orthogonalize_subset: selection larger than ambient dimension");
  std::vector<bool> seen(static_cast<std::size_t>(n_atoms()), false);
  for (int idx : indices) {
    check_atom_index(*this, idx, "orthogonalize_subset");
    if (seen[static_cast<std::size_t>(idx)])
      throw ArgumentError("orthogonalize_subset: duplicate index " +
                          std::to_string(idx));
    seen[static_cast<std::size_t>(idx)] = true;
  }

  Eigen::MatrixXd atoms = atoms_;
  const Eigen::Index k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd q(n_dims(), k);
  for (Eigen::Index l = 0; l < k; ++l) {
    Eigen::VectorXd v = atoms.col(indices[static_cast<std::size_t>(l)]);
    // Two projection passes keep orthogonality near machine precision even
    // for strongly correlated selections.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index p = 0; p < l; ++p) v -= q.col(p).dot(v) * q.col(p);
    const double norm = v.norm();
    if (norm <= kDependenceTol)
      throw DegeneracyError(
          "orthogonalize_subset: selection is linearly dependent at index " +
          std::to_string(indices[static_cast<std::size_t>(l)]));
    q.col(l) = v / norm;
    atoms.col(indices[static_cast<std::size_t>(l)]) = q.col(l);
  }
  return Dictionary(std::move(atoms));
}

CoherenceReport mutual_coherence(const Dictionary& dict) {
  const Eigen::Index m = dict.n_atoms();
  if (m < 2)
    throw ArgumentError("mutual_coherence: needs at least two atoms");
  const Eigen::MatrixXd& b = dict.atoms();

  CoherenceReport best{-1.0, 0, 0};
  const Eigen::Index block = 256;
  for (Eigen::Index j0 = 0; j0 < m; j0 += block) {
    const Eigen::Index w = std::min(block, m - j0);
    // Inner products of all earlier atoms (and the block itself) against the
    // block; only strictly-upper pairs are scanned, so each pair is visited
    // once.
    Eigen::MatrixXd g(j0 + w, w);
    g.noalias() = b.leftCols(j0 + w).transpose() * b.middleCols(j0, w);
    for (Eigen::Index c = 0; c < w; ++c) {
      const Eigen::Index j = j0 + c;
      for (Eigen::Index i = 0; i < j; ++i) {
        const double a = std::abs(g(i, c));
        if (a > best.coherence) {
          best.coherence = a;
          best.atom_i = static_cast<int>(i);
          best.atom_j = static_cast<int>(j);
        }
      }
    }
  }
  return best;
}

double cpa_dimension_bound(int k, int n_atoms) {
  if (k < 1) throw ArgumentError("cpa_dimension_bound: k must be positive");
  if (n_atoms < 2)
    throw ArgumentError("cpa_dimension_bound: needs at least two atoms");
  return 4.0 * static_cast<double>(k) * static_cast<double>(k) *
         std::log(static_cast<double>(n_atoms));
}

double rip_dimension_bound(int k, int n_atoms) {
  if (k < 1) throw ArgumentError("rip_dimension_bound: k must be positive");
  if (n_atoms < k)
    throw ArgumentError("rip_dimension_bound: k exceeds n_atoms");
  return static_cast<double>(k) *
         std::log(static_cast<double>(n_atoms) / static_cast<double>(k));
}

}  // namespace spres
