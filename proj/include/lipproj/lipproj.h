// Copyright 2026 The lipproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the lipproj library. All functions are thread-compatible;
 * lp_last_error() is thread-local. Handles are opaque and owned by the
 * caller once returned. */
#ifndef LIPPROJ_LIPPROJ_H_
#define LIPPROJ_LIPPROJ_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LP_API __declspec(dllexport)
#else
#define LP_API __attribute__((visibility("default")))
#endif

typedef enum lp_status {
  LP_OK = 0,
  LP_ERR_NULL_ARGUMENT = 1,
  LP_ERR_INVALID_DIMENSION = 2,
  LP_ERR_DIMENSION_MISMATCH = 3,
  LP_ERR_INDEX = 4,
  LP_ERR_DOMAIN = 5,
  LP_ERR_PARAMETER = 6,
  LP_ERR_RESOURCE = 7,
  LP_ERR_CONTRACT = 8,
  LP_ERR_CHECK_FAILED = 9,
  LP_ERR_PARSE = 10,
  LP_ERR_INTERNAL = 11
} lp_status;

typedef struct lp_report lp_report;
typedef struct lp_quadratic lp_quadratic;
typedef struct lp_witness lp_witness;

LP_API const char* lp_version(void);
/* Message of the last failing call on this thread ("" if none). */
LP_API const char* lp_last_error(void);
LP_API const char* lp_status_name(lp_status status);
/* Process exit code for a status: 1 check failure, 2 usage, 3 resource. */
LP_API int lp_exit_code(lp_status status);

/* Runs a command ("bound", "table", "witness-check", "average-check",
 * "oracle") configured by a JSON object (may be NULL). A failing embedded
 * check still returns LP_OK; inspect lp_report_passed. */
LP_API lp_status lp_run(const char* command, const char* config_json, lp_report** out);
LP_API int lp_report_passed(const lp_report* report);
/* Table or report text in the configured format. */
LP_API const char* lp_report_output(const lp_report* report);
LP_API const char* lp_report_summary(const lp_report* report);
LP_API const char* lp_report_failure(const lp_report* report);
LP_API void lp_report_free(lp_report* report);

/* coeffs: dim*dim row-major matrix, symmetrised on construction. */
LP_API lp_status lp_quadratic_create(int dim, const double* coeffs, lp_quadratic** out);
/* {"dim": d, "upper": [...]} */
LP_API lp_status lp_quadratic_from_json(const char* json, lp_quadratic** out);
LP_API lp_status lp_quadratic_eval(const lp_quadratic* q, const double* x, double* out);
LP_API lp_status lp_quadratic_sup_norm(const lp_quadratic* q, double* out);
LP_API lp_status lp_quadratic_lip_norm(const lp_quadratic* q, double* out);
LP_API void lp_quadratic_free(lp_quadratic* q);

LP_API lp_status lp_witness_create(int n, double eps, double delta, lp_witness** out);
LP_API lp_status lp_witness_planar(const lp_witness* w, double x, double y, double* value,
                                   double grad[2]);
/* which = 0: sum over all pairs; which = 1: pairs inside the first d
 * coordinates. grad may be NULL, otherwise it receives n entries. */
LP_API lp_status lp_witness_eval(const lp_witness* w, const double* x, int which, double* value,
                                 double* grad);
LP_API void lp_witness_free(lp_witness* w);

LP_API double lp_bound_constant(void);
LP_API lp_status lp_closed_form_bound(int n, double* out);
/* Transportation norm of balanced weights on the given points
 * (npoints x dim row-major; the first point must be the origin). */
LP_API lp_status lp_free_norm(int npoints, int dim, const double* points, const double* weights,
                              double* out);

#ifdef __cplusplus
}
#endif

#endif /* LIPPROJ_LIPPROJ_H_ */
