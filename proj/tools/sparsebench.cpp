// Command-line front end for the sparsepresence shared library. All
// numerical work happens behind the C API; this file only handles argument
// parsing, config merging, and file-name plumbing.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsepresence.h"

namespace {

// Exit codes: 0 success, 2 usage/configuration error, 1 runtime failure.
constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int report(sp_status status) {
  if (status == SP_OK) return kExitOk;
  std::fprintf(stderr, "error: %s: %s\n", sp_status_name(status),
               sp_last_error());
  return status == SP_ERROR_ARGUMENT ? kExitUsage : kExitRuntime;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw CLI::ValidationError("empty entry in integer list");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad integer '" + tok + "'");
    }
    if (pos != tok.size())
      throw CLI::ValidationError("bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list");
  return out;
}

struct ObsHandle {
  sp_observations* ptr = nullptr;
  ~ObsHandle() { sp_observations_free(ptr); }
};
struct DictHandle {
  sp_dictionary* ptr = nullptr;
  ~DictHandle() { sp_dictionary_free(ptr); }
};
struct CoeffHandle {
  sp_coefficients* ptr = nullptr;
  ~CoeffHandle() { sp_coefficients_free(ptr); }
};

sp_status load_observations_any(const std::string& path,
                                sp_observations** out) {
  return has_suffix(path, ".csv") ? sp_observations_load_csv(path.c_str(), out)
                                  : sp_observations_load(path.c_str(), out);
}

sp_status save_observations_any(const sp_observations* obs,
                                const std::string& path) {
  return has_suffix(path, ".csv") ? sp_observations_save_csv(obs, path.c_str())
                                  : sp_observations_save(obs, path.c_str());
}

// ---- gen-dict ----

int run_gen_dict(int64_t n_dims, int64_t n_atoms, uint64_t seed,
                 const std::string& out_path) {
  DictHandle dict;
  if (sp_status s = sp_dictionary_generate(n_dims, n_atoms, seed, &dict.ptr))
    return report(s);
  if (sp_status s = sp_dictionary_save(dict.ptr, out_path.c_str()))
    return report(s);
  std::printf("wrote dictionary %" PRId64 " x %" PRId64 " to %s\n", n_dims,
              n_atoms, out_path.c_str());
  return kExitOk;
}

// ---- synth ----

int run_synth(const std::string& dict_path, std::optional<int64_t> k,
              const std::string& active_list, int64_t n_steps, uint64_t seed,
              double amp_std, double noise_ratio, double novel_std,
              const std::string& out_path) {
  DictHandle dict;
  if (sp_status s = sp_dictionary_load(dict_path.c_str(), &dict.ptr))
    return report(s);
  const int64_t n_atoms = sp_dictionary_n_atoms(dict.ptr);
  const int64_t n_dims = sp_dictionary_n_dims(dict.ptr);

  std::vector<int64_t> active;
  if (!active_list.empty()) {
    active = parse_int_list(active_list);
  } else if (k) {
    active.resize(static_cast<std::size_t>(*k));
    if (sp_status s = sp_sample_active(n_atoms, *k, seed, active.data()))
      return report(s);
  }

  ObsHandle obs;
  if (sp_status s =
          sp_synthesize(dict.ptr, active.data(),
                        static_cast<int64_t>(active.size()), n_steps, seed,
                        amp_std, &obs.ptr, nullptr))
    return report(s);

  if (novel_std > 0.0) {
    std::vector<double> direction(static_cast<std::size_t>(n_dims));
    if (sp_status s = sp_novel_atom(n_dims, seed, direction.data()))
      return report(s);
    ObsHandle with_novel;
    if (sp_status s = sp_observations_inject_novel(
            obs.ptr, direction.data(), n_dims, novel_std, seed,
            &with_novel.ptr))
      return report(s);
    std::swap(obs.ptr, with_novel.ptr);
  }

  if (noise_ratio > 0.0) {
    ObsHandle noisy;
    if (sp_status s =
            sp_observations_add_noise(obs.ptr, noise_ratio, seed, &noisy.ptr))
      return report(s);
    std::swap(obs.ptr, noisy.ptr);
  }

  if (sp_status s = save_observations_any(obs.ptr, out_path))
    return report(s);

  std::string active_text;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (i) active_text += ',';
    active_text += std::to_string(active[i]);
  }
  std::printf("wrote %" PRId64 " observations of dimension %" PRId64
              " to %s\nactive atoms: %s\n",
              n_steps, n_dims, out_path.c_str(),
              active.empty() ? "(none)" : active_text.c_str());
  return kExitOk;
}

// ---- solve ----

int run_solve(const std::string& algo, const std::string& dict_path,
              const std::string& obs_path, std::optional<double> lambda,
              std::optional<int64_t> max_iters, std::optional<double> p_norm,
              std::optional<double> epsilon, std::optional<double> prune_gamma,
              const std::string& out_path, const std::string& scores_path) {
  DictHandle dict;
  if (sp_status s = sp_dictionary_load(dict_path.c_str(), &dict.ptr))
    return report(s);
  ObsHandle obs;
  if (sp_status s = load_observations_any(obs_path, &obs.ptr))
    return report(s);
  const int64_t n_atoms = sp_dictionary_n_atoms(dict.ptr);

  const bool presence_algo =
      algo == "cpa" || algo == "cpa-reg" || algo == "cpa-batch" ||
      algo == "icpa";
  if (presence_algo) {
    std::vector<double> theta(static_cast<std::size_t>(n_atoms));
    sp_status s = SP_OK;
    if (algo == "cpa-batch") {
      s = sp_solve_cpa_batch(dict.ptr, obs.ptr, theta.data());
    } else if (algo == "icpa") {
      s = sp_solve_icpa(dict.ptr, obs.ptr, lambda.value_or(0.4), theta.data());
    } else {
      s = sp_solve_cpa_regularized(dict.ptr, obs.ptr, lambda.value_or(0.4),
                                   theta.data());
    }
    if (s) return report(s);
    if (sp_status w =
            sp_write_presence_csv(theta.data(), n_atoms, out_path.c_str()))
      return report(w);
    std::printf("wrote presence vector (%" PRId64 " atoms) to %s\n", n_atoms,
                out_path.c_str());
    return kExitOk;
  }

  CoeffHandle coeffs;
  if (algo == "mbmp") {
    if (sp_status s = sp_solve_mbmp(dict.ptr, obs.ptr,
                                    max_iters.value_or(200), &coeffs.ptr))
      return report(s);
  } else if (algo == "mfocuss") {
    sp_mfocuss_params params;
    sp_mfocuss_params_default(&params);
    if (lambda) params.lambda = *lambda;
    if (max_iters) params.max_iters = *max_iters;
    if (p_norm) params.p_norm = *p_norm;
    if (epsilon) params.epsilon = *epsilon;
    if (prune_gamma) params.prune_gamma = *prune_gamma;
    if (sp_status s =
            sp_solve_mfocuss(dict.ptr, obs.ptr, &params, &coeffs.ptr))
      return report(s);
    if (!sp_coefficients_converged(coeffs.ptr))
      std::fprintf(stderr,
                   "note: solver did not converge within %" PRId64
                   " iterations\n",
                   sp_coefficients_iterations(coeffs.ptr));
  } else {
    std::fprintf(stderr, "error: unknown algorithm '%s'\n", algo.c_str());
    return kExitUsage;
  }

  if (sp_status s = sp_coefficients_save_csv(coeffs.ptr, out_path.c_str()))
    return report(s);
  if (!scores_path.empty()) {
    std::vector<double> scores(static_cast<std::size_t>(n_atoms));
    if (sp_status s = sp_coefficients_scores(coeffs.ptr, scores.data()))
      return report(s);
    if (sp_status s = sp_write_presence_csv(scores.data(), n_atoms,
                                            scores_path.c_str()))
      return report(s);
  }
  std::printf("wrote coefficients (%" PRId64 " atoms x %" PRId64
              " steps, %" PRId64 " iterations) to %s\n",
              sp_coefficients_n_atoms(coeffs.ptr),
              sp_coefficients_n_steps(coeffs.ptr),
              sp_coefficients_iterations(coeffs.ptr), out_path.c_str());
  return kExitOk;
}

// ---- bench ----

int run_bench(const std::string& experiment, const std::string& config_path,
              const std::string& k_values, std::optional<int64_t> trials,
              std::optional<uint64_t> seed, bool full_scale,
              const std::string& out_dir) {
  char* defaults_text = nullptr;
  if (sp_status s = sp_bench_default_config(experiment.c_str(), &defaults_text))
    return report(s);
  nlohmann::json config = nlohmann::json::parse(defaults_text);
  sp_string_free(defaults_text);

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config file %s\n",
                   config_path.c_str());
      return kExitUsage;
    }
    nlohmann::json file_config;
    try {
      in >> file_config;
    } catch (const nlohmann::json::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", config_path.c_str(), e.what());
      return kExitUsage;
    }
    if (!file_config.is_object()) {
      std::fprintf(stderr, "error: %s: config root must be a JSON object\n",
                   config_path.c_str());
      return kExitUsage;
    }
    config.update(file_config);
  }

  if (!k_values.empty()) {
    const std::vector<int64_t> ks = parse_int_list(k_values);
    config["k_values"] = ks;
  }
  if (trials) config["n_trials"] = *trials;
  if (seed) config["base_seed"] = *seed;
  if (full_scale) {
    config["n_dims"] = 500;
    config["n_atoms"] = 10000;
    std::fprintf(stderr,
                 "warning: full scale selected (n_dims=500, n_atoms=10000); "
                 "expect minutes per trial and several GB of memory\n");
  }

  const std::string merged = config.dump();
  if (sp_status s =
          sp_bench_run(experiment.c_str(), merged.c_str(), out_dir.c_str()))
    return report(s);
  std::printf("experiment '%s' complete; outputs in %s\n", experiment.c_str(),
              out_dir.c_str());
  return kExitOk;
}

// ---- bounds ----

int run_bounds(int64_t k, int64_t n_atoms) {
  double presence = 0.0;
  double classical = 0.0;
  if (sp_status s = sp_cpa_dimension_bound(k, n_atoms, &presence))
    return report(s);
  if (sp_status s = sp_rip_dimension_bound(k, n_atoms, &classical))
    return report(s);
  std::printf("presence separation bound 4 k^2 ln(M): %.6g\n", presence);
  std::printf("classical recovery bound  k ln(M/k):  %.6g\n", classical);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse presence detection benchmark"};
  app.require_subcommand(1);

  // gen-dict
  auto* gen = app.add_subcommand("gen-dict", "generate a random dictionary");
  int64_t gd_dims = 200, gd_atoms = 2000;
  uint64_t gd_seed = 1;
  std::string gd_out;
  gen->add_option("--n-dims", gd_dims, "signal dimension")->required();
  gen->add_option("--n-atoms", gd_atoms, "dictionary size")->required();
  gen->add_option("--seed", gd_seed, "random seed");
  gen->add_option("--out", gd_out, "output path (binary)")->required();

  // synth
  auto* synth = app.add_subcommand(
      "synth", "synthesize an observation record from a dictionary");
  std::string sy_dict, sy_active, sy_out;
  int64_t sy_steps = 10;
  std::optional<int64_t> sy_k;
  uint64_t sy_seed = 1;
  double sy_amp = 1.0, sy_noise = 0.1, sy_novel = 0.0;
  synth->add_option("--dict", sy_dict, "dictionary path")->required();
  synth->add_option("--k", sy_k, "number of active atoms (sampled)");
  synth->add_option("--active", sy_active,
                    "explicit active atom list, e.g. 3,17,42");
  synth->add_option("--n-steps", sy_steps, "observations to synthesize");
  synth->add_option("--seed", sy_seed, "random seed");
  synth->add_option("--amp-std", sy_amp, "amplitude standard deviation");
  synth->add_option("--noise-ratio", sy_noise,
                    "noise std as a fraction of signal std (0 disables)");
  synth->add_option("--novel-std", sy_novel,
                    "inject an out-of-dictionary direction at this "
                    "amplitude std (0 disables)");
  synth->add_option("--out", sy_out, "output path (.csv or binary)")
      ->required();

  // solve
  auto* solve = app.add_subcommand("solve", "run one solver on a record");
  std::string so_algo, so_dict, so_obs, so_out, so_scores;
  std::optional<double> so_lambda, so_p, so_eps, so_gamma;
  std::optional<int64_t> so_iters;
  solve
      ->add_option("--algo", so_algo,
                   "cpa | cpa-reg | cpa-batch | icpa | mbmp | mfocuss")
      ->required();
  solve->add_option("--dict", so_dict, "dictionary path")->required();
  solve->add_option("--obs", so_obs, "observation record (.csv or binary)")
      ->required();
  solve->add_option("--lambda", so_lambda,
                    "ridge weight (cpa/icpa default 0.4, mfocuss 1e-3)");
  solve->add_option("--max-iters", so_iters,
                    "iteration cap (mbmp default 200, mfocuss 500)");
  solve->add_option("--mfocuss-p", so_p, "diversity exponent (default 0.8)");
  solve->add_option("--mfocuss-epsilon", so_eps,
                    "convergence threshold (default 1e-8)");
  solve->add_option("--mfocuss-prune-gamma", so_gamma,
                    "pruning cutoff (default 1e-4)");
  solve->add_option("--out", so_out, "output CSV path")->required();
  solve->add_option("--scores-out", so_scores,
                    "also write per-atom scores CSV (baselines)");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark experiment");
  std::string be_experiment, be_config, be_k, be_out = ".";
  std::optional<int64_t> be_trials;
  std::optional<uint64_t> be_seed;
  bool be_full = false;
  bench
      ->add_option("experiment", be_experiment,
                   "complexity | novel | masking | lambda-sweep")
      ->required();
  bench->add_option("--config", be_config, "JSON config file");
  bench->add_option("--k-values", be_k, "override k list, e.g. 1,5,10");
  bench->add_option("--trials", be_trials, "override trial count");
  bench->add_option("--seed", be_seed, "override base seed");
  bench->add_flag("--full-scale", be_full,
                  "full-scale protocol (n_dims=500, n_atoms=10000)");
  bench->add_option("--out", be_out, "output directory");

  // bounds
  auto* bounds =
      app.add_subcommand("bounds", "print observation-count thresholds");
  int64_t bo_k = 1, bo_atoms = 2000;
  bounds->add_option("--k", bo_k, "active atom count")->required();
  bounds->add_option("--atoms", bo_atoms, "dictionary size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return run_gen_dict(gd_dims, gd_atoms, gd_seed, gd_out);
    if (synth->parsed()) {
      if (!sy_k && sy_active.empty()) {
        std::fprintf(stderr, "error: synth needs --k or --active\n");
        return kExitUsage;
      }
      if (sy_k && !sy_active.empty()) {
        std::fprintf(stderr, "error: --k and --active are exclusive\n");
        return kExitUsage;
      }
      return run_synth(sy_dict, sy_k, sy_active, sy_steps, sy_seed, sy_amp,
                       sy_noise, sy_novel, sy_out);
    }
    if (solve->parsed())
      return run_solve(so_algo, so_dict, so_obs, so_lambda, so_iters, so_p,
                       so_eps, so_gamma, so_out, so_scores);
    if (bench->parsed())
      return run_bench(be_experiment, be_config, be_k, be_trials, be_seed,
                       be_full, be_out);
    if (bounds->parsed()) return run_bounds(bo_k, bo_atoms);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
