#include "sparsepresence.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "sparsepresence/bench.hpp"
#include "sparsepresence/baselines.hpp"
#include "sparsepresence/cpa.hpp"
#include "sparsepresence/dictionary.hpp"
#include "sparsepresence/errors.hpp"
#include "sparsepresence/evaluation.hpp"
#include "sparsepresence/icpa.hpp"
#include "sparsepresence/io.hpp"
#include "sparsepresence/signal_model.hpp"

struct sp_dictionary {
  spres::Dictionary impl;
};
struct sp_observations {
  spres::ObservationSet impl;
};
struct sp_icpa {
  spres::IcpaSolver impl;
};
struct sp_coefficients {
  spres::MmvCoefficients impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

sp_status status_of(const std::exception& e) {
  if (dynamic_cast<const spres::ArgumentError*>(&e)) return SP_ERROR_ARGUMENT;
  if (dynamic_cast<const spres::UnderdeterminedError*>(&e))
    return SP_ERROR_UNDERDETERMINED;
  if (dynamic_cast<const spres::SingularityError*>(&e))
    return SP_ERROR_SINGULAR;
  if (dynamic_cast<const spres::DegeneracyError*>(&e))
    return SP_ERROR_DEGENERATE;
  if (dynamic_cast<const spres::NumericalError*>(&e))
    return SP_ERROR_NUMERICAL;
  if (dynamic_cast<const spres::IoError*>(&e)) return SP_ERROR_IO;
  return SP_ERROR_INTERNAL;
}

// Runs fn, translating the error taxonomy into status codes and recording
// the message for sp_last_error.
template <typename Fn>
sp_status guarded(Fn&& fn) {
  try {
    fn();
    return SP_OK;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SP_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return status_of(e);
  } catch (...) {
    set_error("unknown failure");
    return SP_ERROR_INTERNAL;
  }
}

sp_status require(bool cond, const char* msg) {
  if (cond) return SP_OK;
  set_error(msg);
  return SP_ERROR_ARGUMENT;
}

std::vector<int> to_int_indices(const int64_t* data, int64_t count,
                                const char* what) {
  if (count < 0) throw spres::ArgumentError(std::string(what) + ": negative count");
  if (count > 0 && data == nullptr)
    throw spres::ArgumentError(std::string(what) + ": null index array");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int64_t i = 0; i < count; ++i) {
    if (data[i] < 0 || data[i] > (1ll << 31))
      throw spres::ArgumentError(std::string(what) + ": index out of range");
    out.push_back(static_cast<int>(data[i]));
  }
  return out;
}

}  // namespace

extern "C" {

const char* sp_last_error(void) { return g_last_error.c_str(); }

const char* sp_status_name(sp_status status) {
  switch (status) {
    case SP_OK: return "SP_OK";
    case SP_ERROR_ARGUMENT: return "SP_ERROR_ARGUMENT";
    case SP_ERROR_UNDERDETERMINED: return "SP_ERROR_UNDERDETERMINED";
    case SP_ERROR_SINGULAR: return "SP_ERROR_SINGULAR";
    case SP_ERROR_DEGENERATE: return "SP_ERROR_DEGENERATE";
    case SP_ERROR_NUMERICAL: return "SP_ERROR_NUMERICAL";
    case SP_ERROR_IO: return "SP_ERROR_IO";
    case SP_ERROR_INTERNAL: return "SP_ERROR_INTERNAL";
  }
  return "SP_ERROR_UNKNOWN";
}

const char* sp_version(void) { return "0.1.0"; }

/* ---- dictionary ----------------------------------------------------- */

sp_status sp_dictionary_generate(int64_t n_dims, int64_t n_atoms,
                                 uint64_t seed, sp_dictionary** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  return guarded([&] {
    if (n_dims < 1 || n_dims > (1 << 30) || n_atoms < 1 ||
        n_atoms > (1 << 30))
      throw spres::ArgumentError("sp_dictionary_generate: bad dimensions");
    *out = new sp_dictionary{spres::Dictionary::generate(
        static_cast<int>(n_dims), static_cast<int>(n_atoms), seed)};
  });
}

sp_status sp_dictionary_create(const double* atoms, int64_t n_dims,
                               int64_t n_atoms, sp_dictionary** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(atoms != nullptr, "atoms must not be null"))
    return s;
  return guarded([&] {
    if (n_dims < 1 || n_atoms < 1)
      throw spres::ArgumentError("sp_dictionary_create: bad dimensions");
    Eigen::Map<const Eigen::MatrixXd> m(atoms, n_dims, n_atoms);
    *out = new sp_dictionary{spres::Dictionary(Eigen::MatrixXd(m))};
  });
}

sp_status sp_dictionary_save(const sp_dictionary* dict, const char* path) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] { spres::save_dictionary(dict->impl, path); });
}

sp_status sp_dictionary_load(const char* path, sp_dictionary** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] {
    *out = new sp_dictionary{spres::load_dictionary(path)};
  });
}

void sp_dictionary_free(sp_dictionary* dict) { delete dict; }

int64_t sp_dictionary_n_dims(const sp_dictionary* dict) {
  return dict ? dict->impl.n_dims() : -1;
}

int64_t sp_dictionary_n_atoms(const sp_dictionary* dict) {
  return dict ? dict->impl.n_atoms() : -1;
}

sp_status sp_dictionary_atoms(const sp_dictionary* dict, double* out) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    std::memcpy(out, dict->impl.atoms().data(),
                sizeof(double) *
                    static_cast<std::size_t>(dict->impl.atoms().size()));
  });
}

sp_status sp_dictionary_atom_inner(const sp_dictionary* dict, int64_t i,
                                   int64_t j, double* out) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    *out = dict->impl.atom_inner(static_cast<int>(i), static_cast<int>(j));
  });
}

sp_status sp_dictionary_coherence(const sp_dictionary* dict, double* coherence,
                                  int64_t* atom_i, int64_t* atom_j) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s =
          require(coherence != nullptr, "coherence must not be null"))
    return s;
  return guarded([&] {
    const spres::CoherenceReport r = spres::mutual_coherence(dict->impl);
    *coherence = r.coherence;
    if (atom_i) *atom_i = r.atom_i;
    if (atom_j) *atom_j = r.atom_j;
  });
}

sp_status sp_dictionary_orthogonalize_subset(const sp_dictionary* dict,
                                             const int64_t* indices,
                                             int64_t count,
                                             sp_dictionary** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  return guarded([&] {
    const std::vector<int> idx =
        to_int_indices(indices, count, "sp_dictionary_orthogonalize_subset");
    *out = new sp_dictionary{dict->impl.orthogonalize_subset(idx)};
  });
}

sp_status sp_cpa_dimension_bound(int64_t k, int64_t n_atoms, double* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    *out = spres::cpa_dimension_bound(static_cast<int>(k),
                                      static_cast<int>(n_atoms));
  });
}

sp_status sp_rip_dimension_bound(int64_t k, int64_t n_atoms, double* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    *out = spres::rip_dimension_bound(static_cast<int>(k),
                                      static_cast<int>(n_atoms));
  });
}

/* ---- observation records -------------------------------------------- */

sp_status sp_observations_create(const double* data, int64_t n_dims,
                                 int64_t n_steps, sp_observations** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  return guarded([&] {
    if (n_dims < 1 || n_steps < 0)
      throw spres::ArgumentError("sp_observations_create: bad dimensions");
    if (n_steps > 0 && data == nullptr)
      throw spres::ArgumentError("sp_observations_create: null data");
    Eigen::MatrixXd m(n_dims, n_steps);
    if (n_steps > 0)
      std::memcpy(m.data(), data,
                  sizeof(double) * static_cast<std::size_t>(m.size()));
    *out = new sp_observations{spres::ObservationSet(std::move(m))};
  });
}

void sp_observations_free(sp_observations* obs) { delete obs; }

int64_t sp_observations_n_dims(const sp_observations* obs) {
  return obs ? obs->impl.n_dims() : -1;
}

int64_t sp_observations_n_steps(const sp_observations* obs) {
  return obs ? obs->impl.n_steps() : -1;
}

sp_status sp_observations_data(const sp_observations* obs, double* out) {
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    std::memcpy(out, obs->impl.matrix().data(),
                sizeof(double) *
                    static_cast<std::size_t>(obs->impl.matrix().size()));
  });
}

sp_status sp_sample_active(int64_t n_atoms, int64_t k, uint64_t seed,
                           int64_t* out) {
  if (sp_status s = require(out != nullptr || k == 0, "out must not be null"))
    return s;
  return guarded([&] {
    if (n_atoms < 1 || n_atoms > (1 << 30))
      throw spres::ArgumentError("sp_sample_active: bad n_atoms");
    if (k < 0 || k > n_atoms)
      throw spres::ArgumentError("sp_sample_active: k outside [0, n_atoms]");
    const spres::ActiveSet set = spres::ActiveSet::sample(
        static_cast<int>(k), static_cast<int>(n_atoms), seed);
    for (std::size_t i = 0; i < set.indices().size(); ++i)
      out[i] = set.indices()[i];
  });
}

sp_status sp_synthesize(const sp_dictionary* dict, const int64_t* active,
                        int64_t k, int64_t n_steps, uint64_t seed,
                        double amp_std, sp_observations** out,
                        double* amplitudes) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  return guarded([&] {
    const std::vector<int> idx = to_int_indices(active, k, "sp_synthesize");
    const spres::ActiveSet set(idx, dict->impl.n_atoms());
    spres::SynthesisResult r = spres::synthesize(
        dict->impl, set, static_cast<int>(n_steps), seed, amp_std);
    if (amplitudes) {
      // Step-major copy: row t of the amplitude matrix.
      const Eigen::MatrixXd& a = r.amplitudes.values;
      for (Eigen::Index t = 0; t < a.rows(); ++t)
        for (Eigen::Index l = 0; l < a.cols(); ++l)
          amplitudes[t * a.cols() + l] = a(t, l);
    }
    *out = new sp_observations{std::move(r.observations)};
  });
}

sp_status sp_observations_add_noise(const sp_observations* obs, double ratio,
                                    uint64_t seed, sp_observations** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  return guarded([&] {
    *out = new sp_observations{spres::add_noise(obs->impl, ratio, seed)};
  });
}

sp_status sp_novel_atom(int64_t n_dims, uint64_t seed, double* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    const Eigen::VectorXd v =
        spres::make_novel_atom(static_cast<int>(n_dims), seed);
    std::memcpy(out, v.data(),
                sizeof(double) * static_cast<std::size_t>(v.size()));
  });
}

sp_status sp_observations_inject_novel(const sp_observations* obs,
                                       const double* atom, int64_t n_dims,
                                       double amplitude_std, uint64_t seed,
                                       sp_observations** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(atom != nullptr, "atom must not be null"))
    return s;
  return guarded([&] {
    if (n_dims != obs->impl.n_dims())
      throw spres::ArgumentError(
          "sp_observations_inject_novel: atom dimension mismatch");
    spres::NovelAtomSpec spec{
        Eigen::Map<const Eigen::VectorXd>(atom, n_dims), amplitude_std};
    *out = new sp_observations{
        spres::inject_novel_atom(obs->impl, spec, seed)};
  });
}

sp_status sp_observations_stacked(const sp_observations* obs, double* out) {
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    const Eigen::VectorXd v = spres::stack_observations(obs->impl);
    std::memcpy(out, v.data(),
                sizeof(double) * static_cast<std::size_t>(v.size()));
  });
}

sp_status sp_observations_save(const sp_observations* obs, const char* path) {
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] { spres::save_observations(obs->impl, path); });
}

sp_status sp_observations_load(const char* path, sp_observations** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] {
    *out = new sp_observations{spres::load_observations(path)};
  });
}

sp_status sp_observations_save_csv(const sp_observations* obs,
                                   const char* path) {
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] { spres::save_observations_csv(obs->impl, path); });
}

sp_status sp_observations_load_csv(const char* path, sp_observations** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] {
    *out = new sp_observations{spres::load_observations_csv(path)};
  });
}

/* ---- presence estimators -------------------------------------------- */

sp_status sp_solve_cpa_batch(const sp_dictionary* dict,
                             const sp_observations* obs, double* theta) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(theta != nullptr, "theta must not be null"))
    return s;
  return guarded([&] {
    const spres::PresenceVector p =
        spres::solve_cpa_batch(dict->impl, obs->impl);
    std::memcpy(theta, p.theta.data(),
                sizeof(double) * static_cast<std::size_t>(p.theta.size()));
  });
}

sp_status sp_solve_cpa_regularized(const sp_dictionary* dict,
                                   const sp_observations* obs, double lambda,
                                   double* theta) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(theta != nullptr, "theta must not be null"))
    return s;
  return guarded([&] {
    const spres::PresenceVector p =
        spres::solve_cpa_regularized(dict->impl, obs->impl, lambda);
    std::memcpy(theta, p.theta.data(),
                sizeof(double) * static_cast<std::size_t>(p.theta.size()));
  });
}

sp_status sp_solve_ridge_amplitudes(const sp_dictionary* dict,
                                    const sp_observations* obs, double lambda,
                                    double* out) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    const Eigen::MatrixXd a =
        spres::solve_ridge_amplitudes(dict->impl, obs->impl, lambda);
    for (Eigen::Index t = 0; t < a.rows(); ++t)
      for (Eigen::Index i = 0; i < a.cols(); ++i)
        out[t * a.cols() + i] = a(t, i);
  });
}

sp_status sp_icpa_create(int64_t n_atoms, double lambda, sp_icpa** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  return guarded([&] {
    if (n_atoms < 1 || n_atoms > (1 << 30))
      throw spres::ArgumentError("sp_icpa_create: bad atom count");
    *out = new sp_icpa{spres::IcpaSolver(static_cast<int>(n_atoms), lambda)};
  });
}

void sp_icpa_free(sp_icpa* state) { delete state; }

sp_status sp_icpa_step(sp_icpa* state, const sp_dictionary* dict,
                       const double* y, int64_t n_dims) {
  if (sp_status s = require(state != nullptr, "state must not be null"))
    return s;
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(y != nullptr, "y must not be null")) return s;
  return guarded([&] {
    if (n_dims != dict->impl.n_dims())
      throw spres::ArgumentError("sp_icpa_step: observation length mismatch");
    state->impl.step(dict->impl, Eigen::Map<const Eigen::VectorXd>(y, n_dims));
  });
}

int64_t sp_icpa_n_atoms(const sp_icpa* state) {
  return state ? state->impl.n_atoms() : -1;
}

int64_t sp_icpa_steps(const sp_icpa* state) {
  return state ? state->impl.steps_processed() : -1;
}

sp_status sp_icpa_theta(const sp_icpa* state, double* theta) {
  if (sp_status s = require(state != nullptr, "state must not be null"))
    return s;
  if (sp_status s = require(theta != nullptr, "theta must not be null"))
    return s;
  return guarded([&] {
    std::memcpy(theta, state->impl.theta().data(),
                sizeof(double) *
                    static_cast<std::size_t>(state->impl.theta().size()));
  });
}

sp_status sp_icpa_gain(const sp_icpa* state, double* gain) {
  if (sp_status s = require(state != nullptr, "state must not be null"))
    return s;
  if (sp_status s = require(gain != nullptr, "gain must not be null"))
    return s;
  return guarded([&] {
    std::memcpy(gain, state->impl.gain().data(),
                sizeof(double) *
                    static_cast<std::size_t>(state->impl.gain().size()));
  });
}

sp_status sp_icpa_save(const sp_icpa* state, const char* path) {
  if (sp_status s = require(state != nullptr, "state must not be null"))
    return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] { spres::save_icpa_checkpoint(state->impl, path); });
}

sp_status sp_icpa_load(const char* path, sp_icpa** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] {
    *out = new sp_icpa{spres::load_icpa_checkpoint(path)};
  });
}

sp_status sp_solve_icpa(const sp_dictionary* dict, const sp_observations* obs,
                        double lambda, double* theta) {
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  if (sp_status s = require(theta != nullptr, "theta must not be null"))
    return s;
  return guarded([&] {
    const spres::PresenceVector p =
        spres::solve_icpa(dict->impl, obs->impl, lambda);
    std::memcpy(theta, p.theta.data(),
                sizeof(double) * static_cast<std::size_t>(p.theta.size()));
  });
}

/* ---- baselines ------------------------------------------------------- */

sp_status sp_solve_mbmp(const sp_dictionary* dict, const sp_observations* obs,
                        int64_t max_iters, sp_coefficients** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  return guarded([&] {
    if (max_iters < 1 || max_iters > (1 << 30))
      throw spres::ArgumentError("sp_solve_mbmp: bad max_iters");
    *out = new sp_coefficients{
        spres::solve_mbmp(dict->impl, obs->impl, static_cast<int>(max_iters))};
  });
}

void sp_mfocuss_params_default(sp_mfocuss_params* params) {
  if (!params) return;
  const spres::MfocussParams d;
  params->lambda = d.lambda;
  params->p_norm = d.p_norm;
  params->epsilon = d.epsilon;
  params->prune_gamma = d.prune_gamma;
  params->max_iters = d.max_iters;
}

sp_status sp_solve_mfocuss(const sp_dictionary* dict,
                           const sp_observations* obs,
                           const sp_mfocuss_params* params,
                           sp_coefficients** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s = require(dict != nullptr, "dict must not be null"))
    return s;
  if (sp_status s = require(obs != nullptr, "obs must not be null")) return s;
  return guarded([&] {
    spres::MfocussParams p;
    if (params) {
      if (params->max_iters < 1 || params->max_iters > (1 << 30))
        throw spres::ArgumentError("sp_solve_mfocuss: bad max_iters");
      p.lambda = params->lambda;
      p.p_norm = params->p_norm;
      p.epsilon = params->epsilon;
      p.prune_gamma = params->prune_gamma;
      p.max_iters = static_cast<int>(params->max_iters);
    }
    *out = new sp_coefficients{spres::solve_mfocuss(dict->impl, obs->impl, p)};
  });
}

void sp_coefficients_free(sp_coefficients* coeffs) { delete coeffs; }

int64_t sp_coefficients_n_atoms(const sp_coefficients* coeffs) {
  return coeffs ? coeffs->impl.values.rows() : -1;
}

int64_t sp_coefficients_n_steps(const sp_coefficients* coeffs) {
  return coeffs ? coeffs->impl.values.cols() : -1;
}

int sp_coefficients_converged(const sp_coefficients* coeffs) {
  return coeffs && coeffs->impl.converged ? 1 : 0;
}

int64_t sp_coefficients_iterations(const sp_coefficients* coeffs) {
  return coeffs ? coeffs->impl.iterations : -1;
}

sp_status sp_coefficients_values(const sp_coefficients* coeffs,
                                 double* values) {
  if (sp_status s = require(coeffs != nullptr, "coeffs must not be null"))
    return s;
  if (sp_status s = require(values != nullptr, "values must not be null"))
    return s;
  return guarded([&] {
    std::memcpy(values, coeffs->impl.values.data(),
                sizeof(double) *
                    static_cast<std::size_t>(coeffs->impl.values.size()));
  });
}

sp_status sp_coefficients_scores(const sp_coefficients* coeffs,
                                 double* scores) {
  if (sp_status s = require(coeffs != nullptr, "coeffs must not be null"))
    return s;
  if (sp_status s = require(scores != nullptr, "scores must not be null"))
    return s;
  return guarded([&] {
    const Eigen::VectorXd v = spres::atom_scores(coeffs->impl);
    std::memcpy(scores, v.data(),
                sizeof(double) * static_cast<std::size_t>(v.size()));
  });
}

sp_status sp_coefficients_save_csv(const sp_coefficients* coeffs,
                                   const char* path) {
  if (sp_status s = require(coeffs != nullptr, "coeffs must not be null"))
    return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] { spres::save_coefficients_csv(coeffs->impl, path); });
}

/* ---- evaluation ------------------------------------------------------ */

sp_status sp_f_measure(const int64_t* detected, int64_t n_detected,
                       const int64_t* truth, int64_t n_truth, sp_prf* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    const std::vector<int> det =
        to_int_indices(detected, n_detected, "sp_f_measure");
    const std::vector<int> tru =
        to_int_indices(truth, n_truth, "sp_f_measure");
    int bound = 0;
    for (int i : det) bound = std::max(bound, i + 1);
    for (int i : tru) bound = std::max(bound, i + 1);
    const spres::PRFResult r =
        spres::f_measure(det, spres::ActiveSet(tru, std::max(bound, 1)));
    out->precision = r.precision;
    out->recall = r.recall;
    out->f_measure = r.f_measure;
    out->threshold = r.threshold;
  });
}

sp_status sp_best_threshold_f(const double* scores, int64_t m,
                              const int64_t* truth, int64_t n_truth,
                              sp_prf* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  if (sp_status s = require(scores != nullptr, "scores must not be null"))
    return s;
  return guarded([&] {
    if (m < 1) throw spres::ArgumentError("sp_best_threshold_f: empty scores");
    const std::vector<int> tru =
        to_int_indices(truth, n_truth, "sp_best_threshold_f");
    const spres::PRFResult r = spres::best_threshold_f(
        Eigen::Map<const Eigen::VectorXd>(scores, m),
        spres::ActiveSet(tru, static_cast<int>(m)));
    out->precision = r.precision;
    out->recall = r.recall;
    out->f_measure = r.f_measure;
    out->threshold = r.threshold;
  });
}

sp_status sp_aggregate_trials(const double* values, int64_t n, double* mean,
                              double* stddev) {
  if (sp_status s = require(values != nullptr, "values must not be null"))
    return s;
  if (sp_status s = require(mean != nullptr, "mean must not be null"))
    return s;
  if (sp_status s = require(stddev != nullptr, "stddev must not be null"))
    return s;
  return guarded([&] {
    if (n < 1) throw spres::ArgumentError("sp_aggregate_trials: empty input");
    const std::vector<double> v(values, values + n);
    const spres::TrialStats stats = spres::aggregate_trials(v);
    *mean = stats.mean;
    *stddev = stats.stddev;
  });
}

sp_status sp_density_report(const double* scores, int64_t m,
                            sp_density* out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  if (sp_status s = require(scores != nullptr, "scores must not be null"))
    return s;
  return guarded([&] {
    if (m < 1) throw spres::ArgumentError("sp_density_report: empty scores");
    const spres::DensityReport r =
        spres::density_report(Eigen::Map<const Eigen::VectorXd>(scores, m));
    out->support_fraction = r.support_fraction;
    out->peak_score = r.peak_score;
    out->l1_l2_ratio = r.l1_l2_ratio;
  });
}

sp_status sp_write_presence_csv(const double* theta, int64_t m,
                                const char* path) {
  if (sp_status s = require(theta != nullptr, "theta must not be null"))
    return s;
  if (sp_status s = require(path != nullptr, "path must not be null"))
    return s;
  return guarded([&] {
    if (m < 1)
      throw spres::ArgumentError("sp_write_presence_csv: empty vector");
    spres::save_presence_csv(
        spres::PresenceVector{Eigen::Map<const Eigen::VectorXd>(theta, m)},
        path);
  });
}

/* ---- benchmark harness ----------------------------------------------- */

sp_status sp_bench_default_config(const char* experiment, char** out) {
  if (sp_status s = require(out != nullptr, "out must not be null")) return s;
  *out = nullptr;
  if (sp_status s =
          require(experiment != nullptr, "experiment must not be null"))
    return s;
  return guarded([&] {
    const spres::ExperimentKind kind =
        spres::experiment_kind_from_name(experiment);
    const std::string text =
        spres::config_to_json(spres::default_config(kind));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void sp_string_free(char* s) { std::free(s); }

sp_status sp_bench_run(const char* experiment, const char* config_json,
                       const char* out_dir) {
  if (sp_status s =
          require(experiment != nullptr, "experiment must not be null"))
    return s;
  if (sp_status s = require(out_dir != nullptr, "out_dir must not be null"))
    return s;
  return guarded([&] {
    const spres::ExperimentKind kind =
        spres::experiment_kind_from_name(experiment);
    const spres::ExperimentConfig config = spres::config_from_json(
        kind, config_json && *config_json ? config_json : "{}");
    spres::run_experiment(kind, config, out_dir);
  });
}

} /* extern "C" */
