// Copyright 2026 The nogo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the nogo library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a nogo_status; on failure a one-line description is
 * available from nogo_last_error() on the calling thread until the next
 * call into the library from that thread. Strings returned through `char **`
 * out-parameters are owned by the caller and released with nogo_string_free.
 */
#ifndef NOGO_NOGO_H
#define NOGO_NOGO_H

#include <stddef.h>
#include <stdint.h>

#if defined(NOGO_BUILDING_LIBRARY)
#define NOGO_API __attribute__((visibility("default")))
#else
#define NOGO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nogo_status {
    NOGO_OK = 0,
    NOGO_ERR_INVALID_ARGUMENT = 1,
    NOGO_ERR_EMPTY_SET = 2,
    NOGO_ERR_DIMENSION_MISMATCH = 3,
    NOGO_ERR_NON_FINITE = 4,
    NOGO_ERR_LINEARLY_DEPENDENT = 5,
    NOGO_ERR_NOT_HERMITIAN = 6,
    NOGO_ERR_NON_CONVERGENCE = 7,
    NOGO_ERR_NULL_VECTOR = 8,
    NOGO_ERR_INVALID_STATE = 9,
    NOGO_ERR_NULL_SUPERPOSITION = 10,
    NOGO_ERR_INVALID_PARAMS = 11,
    NOGO_ERR_MEASUREMENT_MISMATCH = 12,
    NOGO_ERR_WRONG_SET_SIZE = 13,
    NOGO_ERR_DEPENDENT_OUTPUTS = 14,
    NOGO_ERR_INVALID_CONFIG = 15,
    NOGO_ERR_IO = 16,
    NOGO_ERR_INTERNAL = 17
} nogo_status;

/* Run configuration options. Real-valued options use nogo_config_set_real,
 * integer options nogo_config_set_uint, names nogo_config_set_string. */
typedef enum nogo_option {
    NOGO_OPT_DIM = 0,            /* uint   */
    NOGO_OPT_A = 1,              /* real   */
    NOGO_OPT_B = 2,              /* real; derived from a when unset */
    NOGO_OPT_ALPHA_MOD = 3,      /* real   */
    NOGO_OPT_ALPHA_ARG = 4,      /* real   */
    NOGO_OPT_BETA_MOD = 5,       /* real; derived from alpha when unset */
    NOGO_OPT_BETA_ARG = 6,       /* real   */
    NOGO_OPT_PHASE_POLICY = 7,   /* string: constant | overlap_arg | canonical_hash */
    NOGO_OPT_THETA = 8,          /* real   */
    NOGO_OPT_THETA1 = 9,         /* real   */
    NOGO_OPT_THETA2 = 10,        /* real   */
    NOGO_OPT_THETA3 = 11,        /* real   */
    NOGO_OPT_SUCCESS_POLICY = 12, /* string: always | constant | overlap_scaled */
    NOGO_OPT_SUCCESS_P = 13,     /* real   */
    NOGO_OPT_TOL = 14,           /* real   */
    NOGO_OPT_SCAN_TOL = 15,      /* real   */
    NOGO_OPT_TRIALS = 16,        /* uint   */
    NOGO_OPT_GRID_STEP = 17,     /* real   */
    NOGO_OPT_SEED = 18,          /* uint   */
    NOGO_OPT_TRUTH = 19,         /* uint, 1-based */
    NOGO_OPT_DETERMINISTIC = 20  /* uint, 0 or 1 */
} nogo_option;

typedef struct nogo_config nogo_config;
typedef struct nogo_state_set nogo_state_set;
typedef struct nogo_usd nogo_usd;

NOGO_API const char *nogo_version(void);
NOGO_API const char *nogo_status_name(nogo_status status);
NOGO_API const char *nogo_last_error(void);
/* CLI exit status for a failure: 2 config, 3 numerical or I/O, 4 on-locus. */
NOGO_API int nogo_status_exit_code(nogo_status status);
NOGO_API void nogo_string_free(char *s);

NOGO_API nogo_status nogo_config_create(nogo_config **out);
NOGO_API void nogo_config_destroy(nogo_config *config);
NOGO_API nogo_status nogo_config_set_real(nogo_config *config, nogo_option option, double value);
NOGO_API nogo_status nogo_config_set_uint(nogo_config *config, nogo_option option, uint64_t value);
NOGO_API nogo_status nogo_config_set_string(nogo_config *config, nogo_option option, const char *value);

/* JSON report for the counterexample pushed through the superposer. */
NOGO_API nogo_status nogo_run_verify(const nogo_config *config, char **report_json);
/* JSON locus summary plus the full CSV grid; grid_csv may be NULL. */
NOGO_API nogo_status nogo_run_scan(const nogo_config *config, char **summary_json, char **grid_csv);
/* Returns NOGO_ERR_DEPENDENT_OUTPUTS when the phases sit on the locus. */
NOGO_API nogo_status nogo_run_demo(const nogo_config *config, char **report_json);
NOGO_API nogo_status nogo_run_usd(const nogo_config *config, const char *states_json, char **report_json);

/* State sets. Amplitudes are interleaved (re0, im0, re1, im1, ...) and are
 * normalized on insertion. */
NOGO_API nogo_status nogo_state_set_create(size_t dim, nogo_state_set **out);
NOGO_API void nogo_state_set_destroy(nogo_state_set *set);
NOGO_API nogo_status nogo_state_set_add(nogo_state_set *set, const double *amplitudes, size_t dim);
NOGO_API size_t nogo_state_set_size(const nogo_state_set *set);
NOGO_API nogo_status nogo_state_set_rank(const nogo_state_set *set, double tol, size_t *rank);
NOGO_API nogo_status nogo_state_set_is_independent(const nogo_state_set *set, double tol, int *independent);

NOGO_API nogo_status nogo_usd_build(const nogo_state_set *hypotheses, nogo_usd **out);
NOGO_API void nogo_usd_destroy(nogo_usd *usd);
/* `out` receives one probability per hypothesis; `count` must match. */
NOGO_API nogo_status nogo_usd_success_probabilities(const nogo_usd *usd, double *out, size_t count);
/* truth_index is 0-based. counts[0] receives inconclusive outcomes and
 * counts[k] label k; `count` must be hypotheses + 1. */
NOGO_API nogo_status nogo_usd_simulate(
    const nogo_usd *usd, size_t truth_index, uint64_t trials, uint64_t seed, uint64_t *counts, size_t count);

/* Writes the two (theta21, theta31) solutions as four doubles. */
NOGO_API nogo_status nogo_solve_degeneracy(double a, double b, double *pairs);

#ifdef __cplusplus
}
#endif

#endif
