/*
 * Copyright 2026 The bellri Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to bellri: two-qubit correlation tensors, the rotationally
 * invariant Bell criterion, CHSH sets, and two-setting local hidden variable
 * models.
 *
 * Conventions
 *  - Every fallible function returns a bellri_status. On failure the
 *    human-readable reason is available from bellri_last_error() on the same
 *    thread until the next failing call.
 *  - Handles (bellri_state, bellri_tensor, bellri_lhv_model) are opaque,
 *    immutable once created and safe to share between threads. Release them
 *    with the matching *_free function; passing NULL to *_free is a no-op.
 *  - Axis indices are 1-based (1 = x, 2 = y, 3 = z). 3x3 real matrices are
 *    passed as 9 doubles in row-major order. A 2x2 complex matrix is passed
 *    as 8 doubles: (re, im) of entries (0,0), (0,1), (1,0), (1,1). A 4x4
 *    density matrix is 32 doubles in the same (re, im) row-major layout.
 *  - Serializers write a NUL-terminated string into buf[0..cap). *len always
 *    receives the string length without the terminator. If cap <= *len the
 *    call returns BELLRI_ERR_BUFFER_TOO_SMALL and writes nothing, so
 *    (buf = NULL, cap = 0) queries the required size.
 */

#ifndef BELLRI_BELLRI_H_
#define BELLRI_BELLRI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BELLRI_BUILDING_LIBRARY)
#    define BELLRI_API __declspec(dllexport)
#  else
#    define BELLRI_API __declspec(dllimport)
#  endif
#else
#  define BELLRI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bellri_status {
  BELLRI_OK = 0,
  BELLRI_ERR_DOMAIN = 1,          /* argument outside an operation's domain */
  BELLRI_ERR_INVARIANT = 2,       /* value violates a type invariant */
  BELLRI_ERR_PARSE = 3,           /* malformed JSON / state spec / file */
  BELLRI_ERR_BUFFER_TOO_SMALL = 4,
  BELLRI_ERR_NULL_ARGUMENT = 5,
  BELLRI_ERR_INTERNAL = 6
} bellri_status;

typedef enum bellri_format {
  BELLRI_FORMAT_JSON = 0,
  BELLRI_FORMAT_CSV = 1
} bellri_format;

typedef struct bellri_state bellri_state;
typedef struct bellri_tensor bellri_tensor;
typedef struct bellri_lhv_model bellri_lhv_model;

BELLRI_API const char* bellri_version(void);
BELLRI_API const char* bellri_status_string(bellri_status status);
BELLRI_API const char* bellri_last_error(void);
/* For BELLRI_ERR_INVARIANT: the violated invariant ("trace", "hermitian",
 * "positive-semidefinite", "shape", "finite"). Empty otherwise. */
BELLRI_API const char* bellri_last_invariant(void);

/* ---- Two-qubit states ------------------------------------------------ */

BELLRI_API bellri_status bellri_state_singlet(bellri_state** out);
BELLRI_API bellri_status bellri_state_white(bellri_state** out);
BELLRI_API bellri_status bellri_state_werner(double v, bellri_state** out);
/* "singlet", "white", "werner:<v>" or "file:<path>". */
BELLRI_API bellri_status bellri_state_parse(const char* spec,
                                            bellri_state** out);
BELLRI_API bellri_status bellri_state_from_json(const char* json,
                                                bellri_state** out);
BELLRI_API bellri_status bellri_state_from_entries(const double re_im[32],
                                                   bellri_state** out);
/* weight * pure + (1 - weight) * noise */
BELLRI_API bellri_status bellri_state_mix(double weight,
                                          const bellri_state* pure,
                                          const bellri_state* noise,
                                          bellri_state** out);
BELLRI_API bellri_status bellri_state_entries(const bellri_state* state,
                                              double re_im[32]);
BELLRI_API bellri_status bellri_state_to_json(const bellri_state* state,
                                              char* buf, size_t cap,
                                              size_t* len);
BELLRI_API void bellri_state_free(bellri_state* state);

BELLRI_API bellri_status bellri_random_unitary(uint64_t seed,
                                               double u_re_im[8]);
/* *invariant = 1 iff (U (x) U)^dag rho (U (x) U) equals rho within tol. */
BELLRI_API bellri_status bellri_check_uu_invariance(const bellri_state* state,
                                                    const double u_re_im[8],
                                                    double tol,
                                                    int* invariant);

/* ---- Correlation tensors -------------------------------------------- */

BELLRI_API bellri_status bellri_tensor_compute(const bellri_state* state,
                                               bellri_tensor** out);
BELLRI_API bellri_status bellri_tensor_from_values(const double t[9],
                                                   bellri_tensor** out);
BELLRI_API bellri_status bellri_tensor_values(const bellri_tensor* tensor,
                                              double t[9]);
/* R1 T R2^T; both must be proper rotations. */
BELLRI_API bellri_status bellri_tensor_rotate(const bellri_tensor* tensor,
                                              const double r1[9],
                                              const double r2[9],
                                              bellri_tensor** out);
BELLRI_API bellri_status bellri_tensor_frobenius_sum(
    const bellri_tensor* tensor, double* out);
BELLRI_API bellri_status bellri_tensor_max_svd(const bellri_tensor* tensor,
                                               double* out);
BELLRI_API bellri_status bellri_tensor_max_grid(const bellri_tensor* tensor,
                                                size_t n_theta, size_t n_phi,
                                                double* out);
BELLRI_API bellri_status bellri_correlation_value(const bellri_state* state,
                                                  const double n1[3],
                                                  const double n2[3],
                                                  double* out);
BELLRI_API bellri_status bellri_evaluate_via_tensor(
    const bellri_tensor* tensor, const double n1[3], const double n2[3],
    double* out);
BELLRI_API bellri_status bellri_tensor_serialize(const bellri_tensor* tensor,
                                                 bellri_format format,
                                                 char* buf, size_t cap,
                                                 size_t* len);
BELLRI_API void bellri_tensor_free(bellri_tensor* tensor);

/* ---- Bell criteria --------------------------------------------------- */

typedef struct bellri_criterion_report {
  double lhs;    /* sum of squared tensor entries */
  double rhs;    /* 2.25 * T_max */
  double margin; /* lhs - rhs; differences within 1e-12 reported as 0 */
  int violated;
  double threshold_this_work; /* 0.75 */
  double threshold_prior;     /* 2 (2/pi)^2 */
} bellri_criterion_report;

typedef struct bellri_chsh_report {
  int axis_a;
  int axis_b;
  double values[4];
  double bound;
  double max_value;
  int satisfied;
} bellri_chsh_report;

typedef struct bellri_bound_report {
  double lhs;    /* (E, E) by quadrature */
  double rhs;    /* (2 pi)^2 T_max */
  double margin;
  int satisfied;
} bellri_bound_report;

typedef struct bellri_threshold {
  int found;         /* 0: no violation for any V <= 1 */
  double visibility; /* valid when found */
  int steps;
  double tol;
} bellri_threshold;

BELLRI_API bellri_status bellri_criterion_evaluate(
    const bellri_tensor* tensor, bellri_criterion_report* out);
BELLRI_API bellri_status bellri_criterion_serialize(
    const bellri_criterion_report* report, bellri_format format, char* buf,
    size_t cap, size_t* len);

/* Plane (axis_a, axis_b) must be {1,2}, {2,3} or {1,3} in either order. */
BELLRI_API bellri_status bellri_chsh_evaluate(const bellri_tensor* tensor,
                                              int axis_a, int axis_b,
                                              bellri_chsh_report* out);
BELLRI_API bellri_status bellri_chsh_serialize(const bellri_chsh_report* report,
                                               bellri_format format, char* buf,
                                               size_t cap, size_t* len);

BELLRI_API bellri_status bellri_inner_product_ee(const bellri_tensor* tensor,
                                                 size_t n_theta, size_t n_phi,
                                                 double* out);
BELLRI_API bellri_status bellri_bound_check(const bellri_tensor* tensor,
                                            size_t n_theta, size_t n_phi,
                                            bellri_bound_report* out);
BELLRI_API bellri_status bellri_bound_serialize(
    const bellri_bound_report* report, bellri_format format, char* buf,
    size_t cap, size_t* len);

BELLRI_API bellri_status bellri_critical_visibility(const bellri_state* pure,
                                                    const bellri_state* noise,
                                                    double tol,
                                                    bellri_threshold* out);
BELLRI_API bellri_status bellri_threshold_serialize(
    const bellri_threshold* result, bellri_format format, char* buf,
    size_t cap, size_t* len);

/* Criterion over `steps` evenly spaced visibilities of the mixture;
 * CSV columns V,lhs,rhs,margin,violated. */
BELLRI_API bellri_status bellri_scan_serialize(const bellri_state* pure,
                                               const bellri_state* noise,
                                               double v_min, double v_max,
                                               size_t steps,
                                               bellri_format format, char* buf,
                                               size_t cap, size_t* len);

/* ---- Local hidden variable models ----------------------------------- */

typedef enum bellri_verdict_reason {
  BELLRI_REASON_CONSISTENT_AT_VISIBILITY = 0,
  BELLRI_REASON_RI_CRITERION_VIOLATED = 1
} bellri_verdict_reason;

typedef struct bellri_verdict {
  double v;
  double margin;
  int consistent;
  bellri_verdict_reason reason;
} bellri_verdict;

typedef struct bellri_mc_report {
  double v;
  int i;
  int j;
  uint64_t n;
  double mean;
  double std_error;
  double target;
  int pass; /* |mean - target| <= 5 std_error */
} bellri_mc_report;

/* r1 / r2 may be NULL for the identity frame. */
BELLRI_API bellri_status bellri_lhv_model_create(double v, const double r1[9],
                                                 const double r2[9],
                                                 bellri_lhv_model** out);
BELLRI_API bellri_status bellri_lhv_flip_probability(
    const bellri_lhv_model* model, double* out);
BELLRI_API bellri_status bellri_lhv_exact_correlation(
    const bellri_lhv_model* model, int i, int j, double* out);
BELLRI_API bellri_status bellri_lhv_sample(const bellri_lhv_model* model,
                                           uint64_t seed, int a[3], int b[3]);
/* n >= 1000. */
BELLRI_API bellri_status bellri_lhv_estimate(const bellri_lhv_model* model,
                                             int i, int j, uint64_t n,
                                             uint64_t seed,
                                             bellri_mc_report* out);
BELLRI_API bellri_status bellri_mc_serialize(const bellri_mc_report* report,
                                             bellri_format format, char* buf,
                                             size_t cap, size_t* len);
BELLRI_API void bellri_lhv_model_free(bellri_lhv_model* model);

/* *defined = 0 when the pair is neither equal nor orthogonal. */
BELLRI_API bellri_status bellri_piecewise_correlation(double v,
                                                      const double n1[3],
                                                      const double n2[3],
                                                      int* defined,
                                                      double* value);

BELLRI_API bellri_status bellri_consistency_verdict(double v,
                                                    bellri_verdict* out);
/* Writes min(steps, cap) rows; *count receives steps. */
BELLRI_API bellri_status bellri_sweep(double v_min, double v_max, size_t steps,
                                      bellri_verdict* rows, size_t cap,
                                      size_t* count);
/* CSV columns v,margin,consistent. */
BELLRI_API bellri_status bellri_sweep_serialize(double v_min, double v_max,
                                                size_t steps,
                                                bellri_format format,
                                                char* buf, size_t cap,
                                                size_t* len);

#ifdef __cplusplus
}
#endif

#endif /* BELLRI_BELLRI_H_ */
