#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sparsepresence/baselines.hpp"

namespace spres {

enum class ExperimentKind { complexity, novel, masking, lambda_sweep };

// Names: "complexity", "novel", "masking", "lambda-sweep".
ExperimentKind experiment_kind_from_name(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

// Shared experiment configuration. Defaults are the desk-scale protocol;
// default_config(kind) adjusts k_values and novel_std per experiment.
struct ExperimentConfig {
  int n_dims = 200;
  int n_atoms = 2000;
  int n_steps = 10;
  std::vector<int> k_values = {1, 5, 10, 20, 40};
  double noise_ratio = 0.1;
  // Amplitude scale of the out-of-dictionary contribution; absent (or 0 in
  // JSON) disables injection.
  std::optional<double> novel_std;
  double cpa_lambda = 0.4;
  int mbmp_max_iters = 200;
  MfocussParams mfocuss;
  int n_trials = 10;
  std::uint64_t base_seed = 1;
  // Detection algorithms to run, from {cpa, icpa, mbmp, mfocuss}.
  std::vector<std::string> algorithms = {"cpa", "mbmp", "mfocuss"};
};

ExperimentConfig default_config(ExperimentKind kind);

// Overlays a JSON object onto default_config(kind). Unknown keys, wrong
// types, and out-of-range values raise ArgumentError.
ExperimentConfig config_from_json(ExperimentKind kind,
                                  const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

// One detection trial outcome (results.csv row).
struct ResultRow {
  std::string experiment;
  std::string algo;
  int k;
  std::optional<double> novel_std;
  std::optional<double> lambda;
  std::uint64_t seed;
  double precision;
  double recall;
  double f;
  double threshold;
};

// One estimate-concentration outcome (density.csv row).
struct DensityRow {
  std::string experiment;
  std::string algo;
  std::string condition;  // "known" or "novel"
  std::optional<double> novel_std;
  std::uint64_t seed;
  double support_fraction;
  double peak_score;
  double l1_l2_ratio;
};

struct BenchOutput {
  std::vector<ResultRow> rows;
  std::vector<DensityRow> density_rows;
  std::filesystem::path results_csv;  // empty when no detection rows
  std::filesystem::path density_csv;  // empty when no density rows
  std::filesystem::path summary_json;
};

// Experiment runners. Every trial is independent: trial i uses seed
// base_seed + i with a fresh dictionary, and trials may execute in parallel
// (SP_THREADS caps the worker count). Outputs are written in deterministic
// order regardless of scheduling.

// F-measure versus number of active atoms, for each configured algorithm.
BenchOutput run_complexity_sweep(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir);

// Score concentration on known-atom versus novel-direction records, the
// latter at amplitude stds 1 and 10.
BenchOutput run_novel_representation(const ExperimentConfig& config,
                                     const std::filesystem::path& out_dir);

// Detection with and without an injected novel contribution, per k.
BenchOutput run_masking_robustness(const ExperimentConfig& config,
                                   const std::filesystem::path& out_dir);

// Reweighted-baseline ridge weight sweep over {1e-7 .. 1e-1} (decades),
// paired novel/no-novel conditions, first configured k only.
BenchOutput run_lambda_sweep(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir);

BenchOutput run_experiment(ExperimentKind kind, const ExperimentConfig& config,
                           const std::filesystem::path& out_dir);

}  // namespace spres
