#pragma once

#include <filesystem>

#include "sparsepresence/baselines.hpp"
#include "sparsepresence/cpa.hpp"
#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/icpa.hpp"
#include "sparsepresence/signal_model.hpp"

namespace spres {

// Binary formats are little-endian with an 8-byte magic, u64 dimensions, and
// IEEE f64 payloads in column-major order:
//   dictionary  "SPDICT01"  n_dims, n_atoms, atoms
//   record      "SPOBS001"  n_dims, n_steps, observations
//   checkpoint  "SPICPA01"  n_atoms, steps_processed, theta, gain
// All load failures (missing file, bad magic, truncation, trailing bytes)
// raise IoError.

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

void save_observations(const ObservationSet& obs,
                       const std::filesystem::path& path);
ObservationSet load_observations(const std::filesystem::path& path);

// CSV record: one row per step, n_dims comma-separated columns, 17
// significant digits, no header.
void save_observations_csv(const ObservationSet& obs,
                           const std::filesystem::path& path);
ObservationSet load_observations_csv(const std::filesystem::path& path);

void save_icpa_checkpoint(const IcpaSolver& solver,
                          const std::filesystem::path& path);
IcpaSolver load_icpa_checkpoint(const std::filesystem::path& path);

// Presence CSV: header "atom_index,theta", one row per atom.
void save_presence_csv(const PresenceVector& presence,
                       const std::filesystem::path& path);
PresenceVector load_presence_csv(const std::filesystem::path& path);

// Coefficient CSV: header "atom_index,t,value"; all-zero rows are omitted.
void save_coefficients_csv(const MmvCoefficients& coeffs,
                           const std::filesystem::path& path);

// Shared float formatting for every CSV writer: shortest representation
// with 17 significant digits, locale-independent.
std::string format_double(double value);

}  // namespace spres
