/* sparsepresence: presence detection for multiple-measurement sparse
 * signals: corrected-projection estimators, matching-pursuit and
 * reweighted-least-squares baselines, and the benchmark harness.
 *
 * Conventions:
 *   - Every fallible call returns sp_status; SP_OK is 0.
 *   - On failure, sp_last_error() returns a thread-local message describing
 *     the most recent error on the calling thread.
 *   - Objects are opaque handles created into an out-parameter and released
 *     with the matching *_free (free functions accept NULL).
 *   - Matrix buffers are caller-allocated; sizes are documented per call.
 */

#ifndef SPARSEPRESENCE_H
#define SPARSEPRESENCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SP_BUILDING_SHARED)
#define SP_API __declspec(dllexport)
#else
#define SP_API __declspec(dllimport)
#endif
#else
#define SP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERROR_ARGUMENT = 1,        /* invalid argument or configuration */
  SP_ERROR_UNDERDETERMINED = 2, /* fewer stacked equations than unknowns */
  SP_ERROR_SINGULAR = 3,        /* numerically singular system */
  SP_ERROR_DEGENERATE = 4,      /* degenerate input for the operation */
  SP_ERROR_NUMERICAL = 5,       /* numerical routine failed */
  SP_ERROR_IO = 6,              /* file persistence failed */
  SP_ERROR_INTERNAL = 7         /* unexpected failure */
} sp_status;

/* Thread-local message for the most recent failure on this thread; empty
 * string if none. The pointer stays valid until the next failing call on
 * the same thread. */
SP_API const char* sp_last_error(void);

/* Stable name for a status code, e.g. "SP_ERROR_ARGUMENT". */
SP_API const char* sp_status_name(sp_status status);

SP_API const char* sp_version(void);

/* ---- dictionary ----------------------------------------------------- */

typedef struct sp_dictionary sp_dictionary;

/* Random unit-norm dictionary with n_dims rows and n_atoms columns. */
SP_API sp_status sp_dictionary_generate(int64_t n_dims, int64_t n_atoms,
                                        uint64_t seed, sp_dictionary** out);

/* Dictionary from a caller buffer, column-major n_dims x n_atoms; every
 * column must have unit L2 norm. */
SP_API sp_status sp_dictionary_create(const double* atoms, int64_t n_dims,
                                      int64_t n_atoms, sp_dictionary** out);

SP_API sp_status sp_dictionary_save(const sp_dictionary* dict,
                                    const char* path);
SP_API sp_status sp_dictionary_load(const char* path, sp_dictionary** out);
SP_API void sp_dictionary_free(sp_dictionary* dict);

SP_API int64_t sp_dictionary_n_dims(const sp_dictionary* dict);
SP_API int64_t sp_dictionary_n_atoms(const sp_dictionary* dict);

/* Copies the atoms into a caller buffer of n_dims * n_atoms doubles,
 * column-major. */
SP_API sp_status sp_dictionary_atoms(const sp_dictionary* dict, double* out);

/* Inner product of two atoms. */
SP_API sp_status sp_dictionary_atom_inner(const sp_dictionary* dict,
                                          int64_t i, int64_t j, double* out);

/* Largest absolute inner product over distinct atom pairs; atom_i/atom_j
 * (optional, may be NULL) receive one argmax pair. */
SP_API sp_status sp_dictionary_coherence(const sp_dictionary* dict,
                                         double* coherence, int64_t* atom_i,
                                         int64_t* atom_j);

/* New dictionary whose selected columns are replaced by an orthonormal
 * basis of their span; other columns are copied unchanged. */
SP_API sp_status sp_dictionary_orthogonalize_subset(const sp_dictionary* dict,
                                                    const int64_t* indices,
                                                    int64_t count,
                                                    sp_dictionary** out);

/* Observation-count thresholds: 4 k^2 ln(n_atoms), and k ln(n_atoms / k). */
SP_API sp_status sp_cpa_dimension_bound(int64_t k, int64_t n_atoms,
                                        double* out);
SP_API sp_status sp_rip_dimension_bound(int64_t k, int64_t n_atoms,
                                        double* out);

/* ---- observation records -------------------------------------------- */

typedef struct sp_observations sp_observations;

/* Record from a caller buffer, column-major n_dims x n_steps (column t is
 * observation t). n_steps may be 0. */
SP_API sp_status sp_observations_create(const double* data, int64_t n_dims,
                                        int64_t n_steps,
                                        sp_observations** out);
SP_API void sp_observations_free(sp_observations* obs);

SP_API int64_t sp_observations_n_dims(const sp_observations* obs);
SP_API int64_t sp_observations_n_steps(const sp_observations* obs);

/* Copies the record into a caller buffer of n_dims * n_steps doubles,
 * column-major. */
SP_API sp_status sp_observations_data(const sp_observations* obs,
                                      double* out);

/* k distinct atom indices drawn uniformly from [0, n_atoms), written to a
 * caller buffer of k entries (the active-set substream of seed). */
SP_API sp_status sp_sample_active(int64_t n_atoms, int64_t k, uint64_t seed,
                                  int64_t* out);

/* Synthesizes n_steps observations from k active atoms with i.i.d. normal
 * amplitudes (scale amp_std). active lists k distinct atom indices; k may
 * be 0 for an all-zero record. amplitudes (optional, may be NULL) receives
 * n_steps * k doubles, step-major: amplitudes[t*k + l] is atom active[l]'s
 * amplitude at step t. */
SP_API sp_status sp_synthesize(const sp_dictionary* dict,
                               const int64_t* active, int64_t k,
                               int64_t n_steps, uint64_t seed, double amp_std,
                               sp_observations** out, double* amplitudes);

/* Adds white noise with standard deviation ratio * std(record). */
SP_API sp_status sp_observations_add_noise(const sp_observations* obs,
                                           double ratio, uint64_t seed,
                                           sp_observations** out);

/* Unit-norm random direction, n_dims doubles into out. */
SP_API sp_status sp_novel_atom(int64_t n_dims, uint64_t seed, double* out);

/* Adds amplitude(t) * atom to every observation, amplitude ~ N(0, std^2). */
SP_API sp_status sp_observations_inject_novel(const sp_observations* obs,
                                              const double* atom,
                                              int64_t n_dims,
                                              double amplitude_std,
                                              uint64_t seed,
                                              sp_observations** out);

/* Copies the stacked record (observations concatenated in step order) into
 * a caller buffer of n_steps * n_dims doubles. */
SP_API sp_status sp_observations_stacked(const sp_observations* obs,
                                         double* out);

SP_API sp_status sp_observations_save(const sp_observations* obs,
                                      const char* path);
SP_API sp_status sp_observations_load(const char* path,
                                      sp_observations** out);
SP_API sp_status sp_observations_save_csv(const sp_observations* obs,
                                          const char* path);
SP_API sp_status sp_observations_load_csv(const char* path,
                                          sp_observations** out);

/* ---- presence estimators -------------------------------------------- */

/* Batch least-squares presence estimate; theta receives n_atoms doubles.
 * Requires n_steps * n_dims >= n_atoms. */
SP_API sp_status sp_solve_cpa_batch(const sp_dictionary* dict,
                                    const sp_observations* obs,
                                    double* theta);

/* Ridge-regularized presence estimate (lambda > 0), any n_steps >= 1. */
SP_API sp_status sp_solve_cpa_regularized(const sp_dictionary* dict,
                                          const sp_observations* obs,
                                          double lambda, double* theta);

/* Ridge estimate of per-step amplitudes; out receives n_steps * n_atoms
 * doubles, step-major: out[t*n_atoms + i] is atom i's amplitude at step t. */
SP_API sp_status sp_solve_ridge_amplitudes(const sp_dictionary* dict,
                                           const sp_observations* obs,
                                           double lambda, double* out);

/* Streaming estimator: one observation at a time, constant memory in the
 * record length. */
typedef struct sp_icpa sp_icpa;

SP_API sp_status sp_icpa_create(int64_t n_atoms, double lambda,
                                sp_icpa** out);
SP_API void sp_icpa_free(sp_icpa* state);
SP_API sp_status sp_icpa_step(sp_icpa* state, const sp_dictionary* dict,
                              const double* y, int64_t n_dims);
SP_API int64_t sp_icpa_n_atoms(const sp_icpa* state);
SP_API int64_t sp_icpa_steps(const sp_icpa* state);
/* theta receives n_atoms doubles. */
SP_API sp_status sp_icpa_theta(const sp_icpa* state, double* theta);
/* gain receives n_atoms * n_atoms doubles, column-major. */
SP_API sp_status sp_icpa_gain(const sp_icpa* state, double* gain);
SP_API sp_status sp_icpa_save(const sp_icpa* state, const char* path);
SP_API sp_status sp_icpa_load(const char* path, sp_icpa** out);

/* Runs the streaming estimator over a whole record. */
SP_API sp_status sp_solve_icpa(const sp_dictionary* dict,
                               const sp_observations* obs, double lambda,
                               double* theta);

/* ---- baselines ------------------------------------------------------- */

typedef struct sp_coefficients sp_coefficients;

/* MMV basic matching pursuit. */
SP_API sp_status sp_solve_mbmp(const sp_dictionary* dict,
                               const sp_observations* obs, int64_t max_iters,
                               sp_coefficients** out);

typedef struct sp_mfocuss_params {
  double lambda;
  double p_norm;
  double epsilon;
  double prune_gamma;
  int64_t max_iters;
} sp_mfocuss_params;

/* Fills the documented defaults: 1e-3, 0.8, 1e-8, 1e-4, 500. */
SP_API void sp_mfocuss_params_default(sp_mfocuss_params* params);

/* MMV regularized FOCUSS; params NULL means defaults. Non-convergence
 * within max_iters is reported through sp_coefficients_converged, not as
 * an error. */
SP_API sp_status sp_solve_mfocuss(const sp_dictionary* dict,
                                  const sp_observations* obs,
                                  const sp_mfocuss_params* params,
                                  sp_coefficients** out);

SP_API void sp_coefficients_free(sp_coefficients* coeffs);
SP_API int64_t sp_coefficients_n_atoms(const sp_coefficients* coeffs);
SP_API int64_t sp_coefficients_n_steps(const sp_coefficients* coeffs);
SP_API int sp_coefficients_converged(const sp_coefficients* coeffs);
SP_API int64_t sp_coefficients_iterations(const sp_coefficients* coeffs);
/* values receives n_atoms * n_steps doubles, column-major (step columns). */
SP_API sp_status sp_coefficients_values(const sp_coefficients* coeffs,
                                        double* values);
/* scores receives n_atoms doubles: L2 norm of each coefficient row. */
SP_API sp_status sp_coefficients_scores(const sp_coefficients* coeffs,
                                        double* scores);
SP_API sp_status sp_coefficients_save_csv(const sp_coefficients* coeffs,
                                          const char* path);

/* ---- evaluation ------------------------------------------------------ */

typedef struct sp_prf {
  double precision;
  double recall;
  double f_measure;
  double threshold; /* NaN unless produced by a threshold scan */
} sp_prf;

/* Detection quality of an index set against the true active set. */
SP_API sp_status sp_f_measure(const int64_t* detected, int64_t n_detected,
                              const int64_t* truth, int64_t n_truth,
                              sp_prf* out);

/* Best F over the threshold scan on |scores| (length m). Truth indices must
 * lie in [0, m). */
SP_API sp_status sp_best_threshold_f(const double* scores, int64_t m,
                                     const int64_t* truth, int64_t n_truth,
                                     sp_prf* out);

/* Mean and sample standard deviation (n - 1). */
SP_API sp_status sp_aggregate_trials(const double* values, int64_t n,
                                     double* mean, double* stddev);

typedef struct sp_density {
  double support_fraction;
  double peak_score;
  double l1_l2_ratio;
} sp_density;

SP_API sp_status sp_density_report(const double* scores, int64_t m,
                                   sp_density* out);

/* Writes "atom_index,theta" CSV. */
SP_API sp_status sp_write_presence_csv(const double* theta, int64_t m,
                                       const char* path);

/* ---- benchmark harness ----------------------------------------------- */

/* Default configuration of an experiment ("complexity", "novel", "masking",
 * "lambda-sweep") as a JSON object. *out is malloc'd; release with
 * sp_string_free. */
SP_API sp_status sp_bench_default_config(const char* experiment, char** out);
SP_API void sp_string_free(char* s);

/* Runs an experiment and writes results.csv / density.csv plus summary.json
 * into out_dir. config_json may be NULL or "{}" for defaults; unknown keys
 * are rejected. */
SP_API sp_status sp_bench_run(const char* experiment, const char* config_json,
                              const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPARSEPRESENCE_H */
