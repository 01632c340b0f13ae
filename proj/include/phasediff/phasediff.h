/*
 * Copyright 2026 The phasediff Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the phasediff library. Every call returns a pd_status;
 * on failure pd_last_error() holds a message for the calling thread. Handles
 * are opaque and owned by the caller, who releases them with the matching
 * *_free function (passing NULL is allowed). */

#ifndef PHASEDIFF_H
#define PHASEDIFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PD_API __declspec(dllexport)
#else
#define PD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pd_status {
    PD_OK = 0,
    PD_INVALID_ARGUMENT,
    PD_NON_HERMITIAN_INPUT,
    PD_NON_UNIT_VECTOR,
    PD_NON_UNIT_NORM,
    PD_DIMENSION_TOO_SMALL,
    PD_MISSING_LABEL,
    PD_VALIDATION_FAILED,
    PD_CUTOFF_MISMATCH,
    PD_MALFORMED_MOMENT,
    PD_TAIL_TOO_LARGE,
    PD_CUTOFF_OVER_BUDGET,
    PD_CONFIG_ERROR,
    PD_IO_ERROR,
    PD_INTERNAL_ERROR
} pd_status;

typedef enum pd_factorization {
    PD_FACTORIZED = 0,
    PD_NOT_FACTORIZABLE = 1,
    PD_INDETERMINATE = 2
} pd_factorization;

typedef struct pd_kernel pd_kernel;
typedef struct pd_state pd_state;
typedef struct pd_interval_set pd_interval_set;
typedef struct pd_operator pd_operator;

typedef struct pd_run_options {
    int has_tolerance;
    double tolerance;
    int threads; /* 0 means 1 */
    int has_seed;
    uint64_t seed;
} pd_run_options;

PD_API const char* pd_last_error(void);
PD_API const char* pd_status_string(pd_status status);
PD_API const char* pd_version(void);
PD_API pd_status pd_set_threads(int threads);

/* Kernels: JSON as accepted by the "kernel" key of a run config. */
PD_API pd_status pd_kernel_from_json(const char* json, pd_kernel** out);
PD_API pd_status pd_kernel_canonical(int S, pd_kernel** out);
PD_API void pd_kernel_free(pd_kernel* kernel);
PD_API pd_status pd_kernel_cutoff(const pd_kernel* kernel, int* S);
PD_API pd_status pd_kernel_coefficient(const pd_kernel* kernel, int n, int m, int k, int l, double* re, double* im);
/* passed is 1 when every block is Hermitian, unit-diagonal and PSD within tol. */
PD_API pd_status pd_kernel_validate(const pd_kernel* kernel, double tol, int* passed, double* min_eigenvalue);
/* For PD_FACTORIZED, value is the product residual; for PD_NOT_FACTORIZABLE
 * the witness mismatch and indices (n+q, n, k, k+q); otherwise 0. */
PD_API pd_status pd_kernel_factorize(const pd_kernel* kernel, double tol, pd_factorization* kind, double* value,
                                     int indices[4]);

/* Interval sets: `count` pairs [a, b) in radians. */
PD_API pd_status pd_interval_set_create(const double* bounds, size_t count, pd_interval_set** out);
PD_API void pd_interval_set_free(pd_interval_set* set);
PD_API pd_status pd_interval_set_length(const pd_interval_set* set, double* length);

/* States: JSON as accepted by the "state" key; missing cutoffs default to Total(S_default). */
PD_API pd_status pd_state_from_json(const char* json, int S_default, pd_state** out);
PD_API pd_status pd_state_number(int n, int k, int S, pd_state** out);
PD_API void pd_state_free(pd_state* state);

PD_API pd_status pd_prob(const pd_kernel* kernel, const pd_state* state, const pd_interval_set* set, double* out);
PD_API pd_status pd_density(const pd_kernel* kernel, const pd_state* state, double theta, double* out);

/* Operators on Total(S); entries addressed by basis index (sector-major). */
PD_API pd_status pd_eval_diff(const pd_kernel* kernel, const pd_interval_set* set, pd_operator** out);
PD_API pd_status pd_first_moment(const pd_kernel* kernel, pd_operator** out);
PD_API pd_status pd_cyclic_moment(const pd_kernel* kernel, int r, pd_operator** out);
PD_API void pd_operator_free(pd_operator* op);
PD_API pd_status pd_operator_dimension(const pd_operator* op, size_t* dim);
PD_API pd_status pd_operator_entry(const pd_operator* op, size_t row, size_t col, double* re, double* im);
PD_API pd_status pd_operator_min_eigenvalue(const pd_operator* op, double* out);

PD_API pd_status pd_phi12_eigenphases(int sector, double* phases, size_t capacity);

/* Runs one command; exit_code receives the CLI exit status (0, 1, 2, 3).
 * The returned status is PD_OK whenever the command ran, even if it failed;
 * the failure message is then available from pd_last_error(). */
PD_API pd_status pd_run(const char* config_json, const char* out_dir, const pd_run_options* options,
                        int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* PHASEDIFF_H */
