/*
Copyright 2026 the ksz authors

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

/* ksz - unimodular multilinear forms on mixed l_p sequence-space domains:
 * generators, exponent formulas, operator-norm estimation and experiment
 * drivers, behind a plain C ABI.
 *
 * Conventions:
 *   - every fallible call returns a ksz_status; on failure the thread-local
 *     message from ksz_last_error() describes what went wrong;
 *   - objects come back through opaque handles released with the matching
 *     *_free function; strings allocated by the library are released with
 *     ksz_string_free;
 *   - exponent lists are comma-separated tokens, each "inf" (case
 *     insensitive), an integer, a fraction "3/2", or a decimal "1.5";
 *     dimension lists are comma-separated integers and dims strings use
 *     the "4x4x2" syntax.
 */

#ifndef KSZ_H
#define KSZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KSZ_API __declspec(dllexport)
#else
#define KSZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ksz_status {
  KSZ_OK = 0,
  KSZ_ERROR_ARGUMENT = 1,   /* malformed input or precondition violation */
  KSZ_ERROR_DOMAIN = 2,     /* a formula was asked outside its regime */
  KSZ_ERROR_CAPABILITY = 3, /* oracle inapplicable or over a configured cap */
  KSZ_ERROR_IO = 4,         /* file unreadable/unwritable */
  KSZ_ERROR_SCHEMA = 5,     /* file readable but structurally wrong */
  KSZ_ERROR_INTERNAL = 6
} ksz_status;

typedef struct ksz_tensor ksz_tensor;     /* dense unimodular coefficient tensor */
typedef struct ksz_estimate ksz_estimate; /* norm estimate with witness */
typedef struct ksz_record ksz_record;     /* persisted experiment run */

KSZ_API const char* ksz_version(void);
/* Message for the most recent failing call on this thread; valid until the
 * next library call on the same thread. */
KSZ_API const char* ksz_last_error(void);
KSZ_API void ksz_string_free(char* s);
/* Worker threads for parallel sections; 0 restores the hardware default. */
KSZ_API ksz_status ksz_set_threads(int n);

/* ---- exponent formulas (exact rational arithmetic inside) ------------- */

/* Full profile of one p-tuple as a JSON object: tokens, the sharp
 * ("optimal") exponent, the Albuquerque-Rezende exponent, the classical
 * and small-regime specializations where defined, gamma, rho, the regime
 * tag and the dominance flag. Infinite values serialize as "inf". */
KSZ_API ksz_status ksz_profile_json(const char* p_list, char** out_json);

/* Conjugate exponent p* with 1/p + 1/p* = 1; INFINITY maps to 1. */
KSZ_API ksz_status ksz_conjugate(double p, double* out);

KSZ_API ksz_status ksz_optimal_exponent(const char* p_list, double* out);
KSZ_API ksz_status ksz_ar_exponent(const char* p_list, double* out);
KSZ_API ksz_status ksz_classical_ksz_exponent(const char* p_list, double* out);
KSZ_API ksz_status ksz_bayart_exponent(const char* p_list, double* out);
/* (1/sqrt2)^{m-1} n^{1/2 + sum(1/2 - 1/p_k)}; needs every p_k >= 2. */
KSZ_API ksz_status ksz_hl_lower_bound(const char* p_list, int64_t n, double* out);

/* ---- tensors ----------------------------------------------------------- */

KSZ_API ksz_status ksz_tensor_rademacher(const char* dims, uint64_t seed, ksz_tensor** out);
KSZ_API ksz_status ksz_tensor_steinhaus(const char* dims, uint64_t seed, ksz_tensor** out);
/* n x n matrix with entry (i, j) = e^{2 pi i * ij / n}, 1-based i, j. */
KSZ_API ksz_status ksz_tensor_fourier(int64_t n, ksz_tensor** out);
KSZ_API ksz_status ksz_tensor_read(const char* path, ksz_tensor** out);
KSZ_API ksz_status ksz_tensor_write(const ksz_tensor* t, const char* path);
KSZ_API ksz_status ksz_tensor_json(const ksz_tensor* t, char** out_json);
/* Leading sub-tensor with dims "AxB..." (componentwise <= the original). */
KSZ_API ksz_status ksz_tensor_restrict(const ksz_tensor* t, const char* dims, ksz_tensor** out);
KSZ_API ksz_status ksz_tensor_order(const ksz_tensor* t, size_t* out);
KSZ_API ksz_status ksz_tensor_dims(const ksz_tensor* t, int64_t* buf, size_t buflen);
/* 1 when entries are exact +-1 signs, 0 for complex unimodular. */
KSZ_API ksz_status ksz_tensor_is_real(const ksz_tensor* t, int* out);
/* max_{r,s} |sum_t a_rt conj(a_st) - n delta_rs| for square matrices. */
KSZ_API ksz_status ksz_tensor_orthogonality_defect(const ksz_tensor* t, double* out);
KSZ_API void ksz_tensor_free(ksz_tensor* t);

/* ---- operator-norm estimation ------------------------------------------ */

typedef enum ksz_method {
  KSZ_METHOD_AUTO = 0,        /* strongest applicable oracle, else multi-start */
  KSZ_METHOD_ALTERNATING = 1, /* multi-start alternating ascent (lower bound) */
  KSZ_METHOD_VERTEX = 2,      /* exact sign enumeration (real signs, inf slots) */
  KSZ_METHOD_SV = 3           /* exact largest singular value (l2 x l2) */
} ksz_method;

/* Estimate the operator norm of t on the domain given by p_list (one
 * exponent per slot). num_starts/tol/max_cycles configure the ascent;
 * pass 0 for the defaults (16 starts, 1e-10, 500 cycles). */
KSZ_API ksz_status ksz_norm_estimate(const ksz_tensor* t, const char* p_list, ksz_method method,
                                     int num_starts, uint64_t seed, double tol, int max_cycles,
                                     ksz_estimate** out);
KSZ_API ksz_status ksz_estimate_lower(const ksz_estimate* e, double* out);
KSZ_API ksz_status ksz_estimate_upper(const ksz_estimate* e, int* has_upper, double* out);
/* Static string: alternating | vertex-exact | singular-value | basis-certificate. */
KSZ_API ksz_status ksz_estimate_method(const ksz_estimate* e, const char** out);
KSZ_API ksz_status ksz_estimate_iterations(const ksz_estimate* e, int64_t* out);
KSZ_API ksz_status ksz_estimate_converged(const ksz_estimate* e, int* out);
/* Full estimate as JSON, witness vectors in the tensor number conventions. */
KSZ_API ksz_status ksz_estimate_json(const ksz_estimate* e, char** out_json);
KSZ_API void ksz_estimate_free(ksz_estimate* e);

/* Certified lower bounds independent of the ascent. */
KSZ_API ksz_status ksz_basis_lower_bound(const ksz_tensor* t, const char* p_list, double* out);
KSZ_API ksz_status ksz_restriction_lower_bound(const ksz_tensor* t, const char* p_list,
                                               size_t slot, int num_starts, uint64_t seed,
                                               double* out);
/* (sum n_k)^{1/rho} prod n_k^{max{1/2 - 1/p_k, 0}} for dims "AxB..." (the
 * upper-bound factor modulo the universal constant). */
KSZ_API ksz_status ksz_upper_bound_factor(const char* dims, const char* p_list, double* out);

/* ---- experiments -------------------------------------------------------- */

/* Smallest estimated norm over `trials` seeded sign draws on the domain
 * l_{p_1}^n x ... x l_{p_m}^n (m from p_list); `exhaustive` != 0 walks all
 * 2^(n^m) sign tensors instead (allowed while n^m <= 20). out_best may be
 * NULL when the minimizing tensor is not needed. */
KSZ_API ksz_status ksz_search_run(const char* p_list, int64_t n, int64_t trials, int exhaustive,
                                  uint64_t seed, int num_starts, double tol, int max_cycles,
                                  ksz_record** out_record, ksz_tensor** out_best);

/* min-norm searches across the strictly increasing n_list ("4,8,16,32")
 * plus a log-log slope fit of the minima. */
KSZ_API ksz_status ksz_slope_run(const char* p_list, const char* n_list, int64_t trials,
                                 uint64_t seed, int num_starts, double tol, int max_cycles,
                                 ksz_record** out_record);

/* Upper-bound factor over conjectured envelope at p = (3/2, 3, 3), C = 1. */
KSZ_API ksz_status ksz_conjecture_ratio(int64_t n1, int64_t n2, int64_t n3, double* out);
/* The ratio along n1 = 1, n2 = n3 = N for N in n_list, with the fitted
 * decay slope. */
KSZ_API ksz_status ksz_conjecture_run(const char* n_list, ksz_record** out_record);

/* Character-matrix scan over n1_list x n2_list x p_list^2 (p >= 2): norm
 * estimate against n^{1/2} n1^{1/2-1/p1} n2^{1/2-1/p2}, n = max(n1,n2). */
KSZ_API ksz_status ksz_fourier_scan_run(const char* n1_list, const char* n2_list,
                                        const char* p_list, int num_starts, uint64_t seed,
                                        double tol, int max_cycles, ksz_record** out_record);

/* fourier scan plus the real-case reference constant 8 sqrt(2 ln 9). */
KSZ_API ksz_status ksz_constant_one_run(const char* n1_list, const char* n2_list,
                                        const char* p_list, int num_starts, uint64_t seed,
                                        double tol, int max_cycles, ksz_record** out_record);

KSZ_API ksz_status ksz_record_json(const ksz_record* r, char** out_json);
/* Rows alone, one JSON object per line; the reproducibility contract is
 * byte-identity of this serialization for identical configs. */
KSZ_API ksz_status ksz_record_rows(const ksz_record* r, char** out_text);
KSZ_API ksz_status ksz_record_csv(const ksz_record* r, char** out_text);
KSZ_API ksz_status ksz_record_write(const ksz_record* r, const char* path);
KSZ_API ksz_status ksz_record_load(const char* path, ksz_record** out_record);
/* Human-readable column documentation for one experiment kind. */
KSZ_API ksz_status ksz_csv_describe(const char* kind, char** out_text);
KSZ_API void ksz_record_free(ksz_record* r);

#ifdef __cplusplus
}
#endif

#endif /* KSZ_H */
