/*
 * Copyright 2026 The angleopt Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libangleopt: energies of line configurations on spheres,
 * the exact alpha = infinity ledger, multistart search at finite alpha and
 * exact simplex quadratic programs.
 *
 * Conventions:
 *   - Every fallible function returns an angleopt_status; on failure a
 *     message is available from angleopt_last_error() on the same thread.
 *   - Objects are opaque handles released with their *_free function.
 *   - Strings returned through char** are owned by the caller and released
 *     with angleopt_string_free().
 *   - Exact rationals travel as "num/den" strings ("num" when den is 1).
 *   - alpha is passed as a double; pass INFINITY for the alpha = infinity
 *     kernel.
 */
#ifndef ANGLEOPT_ANGLEOPT_H
#define ANGLEOPT_ANGLEOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ANGLEOPT_BUILDING_LIBRARY)
#    define ANGLEOPT_API __declspec(dllexport)
#  else
#    define ANGLEOPT_API __declspec(dllimport)
#  endif
#else
#  define ANGLEOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum angleopt_status {
  ANGLEOPT_OK = 0,
  ANGLEOPT_ERROR_INVALID_ARGUMENT = 1, /* null pointers, out-of-range integers */
  ANGLEOPT_ERROR_PARSE = 2,            /* malformed JSON or rational text */
  ANGLEOPT_ERROR_VALIDATION = 3,       /* weights, symmetry, structure invariants */
  ANGLEOPT_ERROR_DIMENSION = 4,        /* incompatible ambient spaces */
  ANGLEOPT_ERROR_DOMAIN = 5,           /* argument outside an operation's domain */
  ANGLEOPT_ERROR_INTERNAL = 6
} angleopt_status;

typedef enum angleopt_sense { ANGLEOPT_MAXIMIZE = 0, ANGLEOPT_MINIMIZE = 1 } angleopt_sense;

typedef struct angleopt_config angleopt_config;
typedef struct angleopt_params angleopt_params;
typedef struct angleopt_run angleopt_run;
typedef struct angleopt_matrix angleopt_matrix;

ANGLEOPT_API const char* angleopt_version(void);
ANGLEOPT_API const char* angleopt_last_error(void);
ANGLEOPT_API void angleopt_string_free(char* s);

/* ---- line configurations ---------------------------------------------- */

/* JSON {dimension, weight_mode, atoms: [{coords, weight_num, weight_den}]}. */
ANGLEOPT_API angleopt_status angleopt_config_parse(const char* json, angleopt_config** out);
/* N unit masses spread round-robin over the standard basis of R^{d+1}. */
ANGLEOPT_API angleopt_status angleopt_config_conjectured(int d, int n, angleopt_config** out);
/* Probability measure sum_i a_i delta_{e_i} + b_i delta_{-e_i}; a and b hold
 * d+1 rational strings each and a_i + b_i must equal 1/(d+1). */
ANGLEOPT_API angleopt_status angleopt_config_weighted(int d, const char* const* a, const char* const* b,
                                                      size_t count, angleopt_config** out);
ANGLEOPT_API angleopt_status angleopt_config_to_json(const angleopt_config* config, char** out);
ANGLEOPT_API angleopt_status angleopt_config_to_probability(const angleopt_config* config,
                                                           angleopt_config** out);
ANGLEOPT_API size_t angleopt_config_size(const angleopt_config* config);
ANGLEOPT_API void angleopt_config_free(angleopt_config* config);

/* *exact receives the exact "num/den" energy when every kernel value is
 * decided combinatorially (frame configurations), else NULL. exact may be
 * NULL if the caller does not want it. */
ANGLEOPT_API angleopt_status angleopt_energy(const angleopt_config* config, double alpha, double orth_tol,
                                             double* value, char** exact);
ANGLEOPT_API angleopt_status angleopt_bilinear(const angleopt_config* mu, const angleopt_config* nu,
                                               double alpha, double orth_tol, double* value, char** exact);
ANGLEOPT_API angleopt_status angleopt_equivalent(const angleopt_config* mu, const angleopt_config* nu,
                                                 double tol, int* result);

/* ---- exact alpha = infinity ledger ------------------------------------ */

ANGLEOPT_API angleopt_status angleopt_ledger_f_dn(int d, int n, char** out);
ANGLEOPT_API angleopt_status angleopt_ledger_f_dnk(int d, int n, int k, char** out);
/* *csv receives the report (d,n,k,lhs,rhs,check_name,pass). workers = 0
 * uses ANGLEOPT_THREADS or the machine's parallelism. */
ANGLEOPT_API angleopt_status angleopt_verify_lemma(int d_max, int n_max, unsigned workers, char** csv,
                                                   size_t* checks, size_t* failures);

/* ---- multistart search ------------------------------------------------ */

/* json may be NULL for defaults. Unknown keys are rejected. */
ANGLEOPT_API angleopt_status angleopt_params_parse(const char* json, angleopt_params** out);
ANGLEOPT_API angleopt_status angleopt_params_to_json(const angleopt_params* params, char** out);
ANGLEOPT_API angleopt_status angleopt_params_set_workers(angleopt_params* params, unsigned workers);
ANGLEOPT_API uint64_t angleopt_params_seed(const angleopt_params* params);
ANGLEOPT_API void angleopt_params_free(angleopt_params* params);

typedef struct angleopt_run_summary {
  double alpha;
  int d;
  int n;
  double best_energy;
  double conjectured_energy;
  double gap; /* conjectured_energy - best_energy */
  int equivalent;
  double converged_fraction;
  uint64_t seed;
} angleopt_run_summary;

ANGLEOPT_API angleopt_status angleopt_optimize(int d, int n, double alpha, const angleopt_params* params,
                                               angleopt_run** out);
ANGLEOPT_API angleopt_status angleopt_run_summarize(const angleopt_run* run, angleopt_run_summary* out);
ANGLEOPT_API angleopt_status angleopt_run_best_config(const angleopt_run* run, angleopt_config** out);
/* Single-row CSV in the sweep schema. */
ANGLEOPT_API angleopt_status angleopt_run_csv(const angleopt_run* run, char** csv);
ANGLEOPT_API void angleopt_run_free(angleopt_run* run);

/* *csv: alpha,d,N,best_energy,conjectured_energy,gap,equivalent,
 * converged_fraction,seed. *exceedances counts rows whose best energy beats
 * the conjectured energy by more than 1e-6. */
ANGLEOPT_API angleopt_status angleopt_sweep(int d, int n, const double* alphas, size_t count,
                                            const angleopt_params* params, char** csv, size_t* exceedances);

/* ---- exact simplex quadratic programs --------------------------------- */

/* 2-D JSON array of "num/den" strings. */
ANGLEOPT_API angleopt_status angleopt_matrix_parse(const char* json, angleopt_matrix** out);
ANGLEOPT_API void angleopt_matrix_free(angleopt_matrix* matrix);
ANGLEOPT_API angleopt_status angleopt_qp_solve(const angleopt_matrix* matrix, angleopt_sense sense,
                                               char** witness_json);
ANGLEOPT_API angleopt_status angleopt_qp_verify(const angleopt_matrix* matrix, const char* witness_json,
                                                angleopt_sense sense, int grid_res, int* ok);
/* Optimal alpha = infinity weights on the support of a configuration. */
ANGLEOPT_API angleopt_status angleopt_support_optimum(const angleopt_config* support, double orth_tol,
                                                      char** witness_json);

/* FNV-1a 64-bit hash of a byte string, for tagging run records. */
ANGLEOPT_API uint64_t angleopt_content_hash(const char* data, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* ANGLEOPT_ANGLEOPT_H */
