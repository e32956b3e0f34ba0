/*
   Copyright 2026 the bpverify developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * C interface of the bpverify shared library.
 *
 * The library evaluates the special constants of subspace-measure
 * decompositions (Stiefel volumes, Siegel gamma, the linear and affine
 * decomposition constants) and certifies the decomposition identities
 * numerically: Monte Carlo estimators with standard errors on both sides,
 * closed-form oracles where available, and deterministic quadrature for
 * the singular-weight cases.
 *
 * All functions return bpv_status; on failure bpv_last_error() carries a
 * human-readable message (thread-local). Handles are opaque and must be
 * released with their matching *_free function. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * bpv_string_free.
 */

#ifndef BPVERIFY_H
#define BPVERIFY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BPV_API __declspec(dllexport)
#else
#define BPV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bpv_status {
  BPV_OK = 0,
  BPV_ERR_INVALID_ARGUMENT = 1, /* bad dimensions, ordering, or values */
  BPV_ERR_SINGULAR = 2,         /* rank-deficient configuration */
  BPV_ERR_OUT_OF_DOMAIN = 3,    /* outside the absolute-convergence domain */
  BPV_ERR_UNSUPPORTED = 4,      /* no evaluation path for this configuration */
  BPV_ERR_PARSE = 5,            /* malformed spec or suite text */
  BPV_ERR_IO = 6,               /* file could not be read or written */
  BPV_ERR_INTERNAL = 7
} bpv_status;

BPV_API const char* bpv_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
BPV_API const char* bpv_last_error(void);

/* ------------------------------------------------------------------ */
/* Special constants                                                    */
/* ------------------------------------------------------------------ */

/* Siegel gamma Gamma_k(alpha); requires alpha > (k-1)/2. */
BPV_API bpv_status bpv_siegel_gamma(int k, double alpha, double* out);

/* Deterministic cone-integral cross-check of Gamma_k (k <= 2).
   error_bound may be NULL. */
BPV_API bpv_status bpv_siegel_gamma_quad(int k, double alpha, double* out, double* error_bound);

/* Stiefel manifold volume sigma_{n,k}; requires 1 <= k <= n. */
BPV_API bpv_status bpv_stiefel_volume(int n, int k, double* out);

/* sigma_{n,q}/sigma_{k,q}; requires 1 <= q <= k <= n. */
BPV_API bpv_status bpv_bp_constant(int n, int k, int q, double* out);

/* (q!)^{n-k} sigma_{n,q}/sigma_{k,q}; requires 1 <= q <= k <= n. */
BPV_API bpv_status bpv_bp_affine_constant(int n, int k, int q, double* out);

/* Render a constants table over the cartesian product of the given
   parameter values (triples violating 1 <= q <= k <= n are skipped).
   format is "json", "csv", or "human". */
BPV_API bpv_status bpv_constants_table(const int* n_values, size_t n_count, const int* k_values,
                                       size_t k_count, const int* q_values, size_t q_count,
                                       const char* format, char** out);

/* ------------------------------------------------------------------ */
/* Identity verification                                                */
/* ------------------------------------------------------------------ */

typedef struct bpv_run bpv_run;
typedef struct bpv_report bpv_report;

/* identity: "polar", "bp", "affine-bp", "bp-dual", "affine-dual",
   "multilinear", "drury", or "riesz". Returns NULL on unknown name. */
BPV_API bpv_run* bpv_run_new(const char* identity);
BPV_API void bpv_run_free(bpv_run* run);

/* Integer keys: "n", "k", "q", "ell", "samples", "seed", "workers".
   Double keys: "alpha", "rel_tol", "z_max", "scale", "offset_scale",
   "constant_scale".
   String keys: "f" (function spec, e.g. "gaussian:a=1;ball:R=2"). */
BPV_API bpv_status bpv_run_set_int(bpv_run* run, const char* key, int64_t value);
BPV_API bpv_status bpv_run_set_double(bpv_run* run, const char* key, double value);
BPV_API bpv_status bpv_run_set_string(bpv_run* run, const char* key, const char* value);

/* Executes the verification; on success the caller owns *out. */
BPV_API bpv_status bpv_run_execute(const bpv_run* run, bpv_report** out);

/* 1 if the verification passed, 0 otherwise. */
BPV_API int bpv_report_pass(const bpv_report* report);

/* Numeric report fields: "lhs.mean", "lhs.stderr", "lhs.samples",
   "lhs.rejected", the same under "rhs." and "lhs_mc.", plus
   "closed_form", "z", "rel_gap". Missing fields return
   BPV_ERR_INVALID_ARGUMENT. */
BPV_API bpv_status bpv_report_value(const bpv_report* report, const char* field, double* out);

/* Render to "json", "csv", or "human"; no_timestamp omits the timestamp
   and runtime so identical runs are byte-identical. */
BPV_API bpv_status bpv_report_render(const bpv_report* report, const char* format,
                                     int no_timestamp, char** out);
BPV_API void bpv_report_free(bpv_report* report);

/* ------------------------------------------------------------------ */
/* Suites                                                               */
/* ------------------------------------------------------------------ */

/* Runs a suite file and renders the aggregate report. all_pass receives
   1/0; workers > 0 overrides the per-entry worker counts. */
BPV_API bpv_status bpv_suite_run(const char* path, const char* format, int no_timestamp,
                                 int workers, char** report_out, int* all_pass);

BPV_API void bpv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BPVERIFY_H */
