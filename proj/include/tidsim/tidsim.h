/*
 * Copyright 2026 The tidsim Authors
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
#ifndef TIDSIM_TIDSIM_H_
#define TIDSIM_TIDSIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TIDSIM_BUILDING_LIBRARY)
#    define TIDSIM_API __declspec(dllexport)
#  else
#    define TIDSIM_API __declspec(dllimport)
#  endif
#else
#  define TIDSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tidsim_status {
  TIDSIM_OK = 0,
  TIDSIM_ERR_INVALID_ARGUMENT = 1,
  TIDSIM_ERR_UNPHYSICAL_PARAMS = 2,
  TIDSIM_ERR_NUMERICAL_FAILURE = 3,
  TIDSIM_ERR_INCOMPLETE_KRAUS = 4,
  TIDSIM_ERR_NO_TRANSITION = 5,
  TIDSIM_ERR_UNKNOWN_SEQUENCE = 6,
  TIDSIM_ERR_SYNTAX = 7,
  TIDSIM_ERR_SEMANTIC = 8,
  TIDSIM_ERR_CONFIG = 9,
  TIDSIM_ERR_INCOMPLETE_RECORD = 10,
  TIDSIM_ERR_IO = 11,
  TIDSIM_ERR_INTERNAL = 99
} tidsim_status;

/* Opaque handles. Every handle returned through an out-parameter is owned by
 * the caller and released with the matching *_free function. */
typedef struct tidsim_state tidsim_state;
typedef struct tidsim_schedule tidsim_schedule;
typedef struct tidsim_result tidsim_result;

TIDSIM_API const char* tidsim_version(void);
TIDSIM_API const char* tidsim_status_name(tidsim_status s);

/* Message of the last failed call on this thread ("" if none). */
TIDSIM_API const char* tidsim_last_error(void);

/* Strings returned through char** out-parameters. */
TIDSIM_API void tidsim_string_free(char* s);

/* ---- states ------------------------------------------------------------ */

TIDSIM_API tidsim_status tidsim_state_from_bd(double c1, double c2, double c3, tidsim_state** out);
/* Nested [re, im] pairs, 4x4. */
TIDSIM_API tidsim_status tidsim_state_from_json(const char* json, tidsim_state** out);
TIDSIM_API tidsim_status tidsim_state_load(const char* path, tidsim_state** out);
TIDSIM_API void tidsim_state_free(tidsim_state* s);

TIDSIM_API tidsim_status tidsim_state_to_json(const tidsim_state* s, char** out);
/* Row-major entries. */
TIDSIM_API tidsim_status tidsim_state_get(const tidsim_state* s, double re[16], double im[16]);
/* c_i = <sigma_i x sigma_i>; residual is the distance to the Bell-diagonal
 * state with the same c (may be NULL). */
TIDSIM_API tidsim_status tidsim_state_bd_params(const tidsim_state* s, double c[3], double* residual);

TIDSIM_API tidsim_status tidsim_fidelity(const tidsim_state* a, const tidsim_state* b, double* out);
/* a, b in "IXYZ". */
TIDSIM_API tidsim_status tidsim_pauli_expectation(const tidsim_state* s, char a, char b, double* out);

/* ---- correlations ------------------------------------------------------ */

typedef struct tidsim_correlations {
  double classical;
  double discord;
  double total;
  int chi_clamped;
} tidsim_correlations;

TIDSIM_API tidsim_status tidsim_correlations_bd(double c1, double c2, double c3, tidsim_correlations* out);
/* Measurement on the second qubit, grid_n >= 64 (0 selects the default). */
TIDSIM_API tidsim_status tidsim_discord_bruteforce(const tidsim_state* s, int grid_n, double* out);
TIDSIM_API tidsim_status tidsim_mutual_information(const tidsim_state* s, double* out);
/* gamma is the mean dephasing rate in 1/s. */
TIDSIM_API tidsim_status tidsim_transition_time(double c1, double c2, double c3, double gamma, double* out);

/* ---- schedules --------------------------------------------------------- */

TIDSIM_API int tidsim_sequence_count(void);
TIDSIM_API const char* tidsim_sequence_name(int index);
TIDSIM_API int tidsim_sequence_pulse_count(int index);

TIDSIM_API tidsim_status tidsim_schedule_builtin(const char* name, double tau, int repetitions,
                                                 tidsim_schedule** out);
/* tau <= 0 or NaN leaves `tau` unbound; repetitions <= 0 leaves `N` unbound.
 * name may be NULL. */
TIDSIM_API tidsim_status tidsim_schedule_compile(const char* dsl, double tau, int repetitions, const char* name,
                                                 tidsim_schedule** out);
TIDSIM_API void tidsim_schedule_free(tidsim_schedule* s);

TIDSIM_API tidsim_status tidsim_schedule_to_json(const tidsim_schedule* s, char** out);
TIDSIM_API tidsim_status tidsim_schedule_to_dsl(const tidsim_schedule* s, char** out);
TIDSIM_API tidsim_status tidsim_schedule_pulse_count(const tidsim_schedule* s, int* out);
/* One cycle with simultaneous pulses of the given lengths on the two qubits. */
TIDSIM_API tidsim_status tidsim_schedule_cycle_time(const tidsim_schedule* s, double pulse_1, double pulse_2,
                                                    double* out);

typedef enum tidsim_noise_kind { TIDSIM_NOISE_WHITE = 0, TIDSIM_NOISE_OU = 1 } tidsim_noise_kind;

typedef struct tidsim_noise {
  tidsim_noise_kind kind;
  double rate;   /* white: 1/s */
  double sigma;  /* OU: rad/s */
  double tau_c;  /* OU: s */
} tidsim_noise;

/* Coherence decay exponent at time t; schedule NULL is free evolution. */
TIDSIM_API tidsim_status tidsim_filter_exponent(const tidsim_schedule* s, const tidsim_noise* noise, double t,
                                                double* out);

/* ---- tomography -------------------------------------------------------- */

typedef struct tidsim_tomography {
  double fidelity;
  double linear_min_eigenvalue;
  int linear_physical;
} tidsim_tomography;

/* reconstructed and record_csv may be NULL. */
TIDSIM_API tidsim_status tidsim_tomography_run(const tidsim_state* s, int64_t shots, uint64_t seed,
                                               tidsim_tomography* summary, tidsim_state** reconstructed,
                                               char** record_csv);

/* ---- scenarios and sweeps ---------------------------------------------- */

typedef struct tidsim_options {
  const char* out_dir;   /* NULL: keep the config value */
  const char* engine;    /* analytic | mc | ff */
  const char* sequence;  /* builtin name, "none" or a DSL file */
  int has_seed;
  uint64_t seed;
  int trajectories;      /* <= 0: keep */
  double tau;            /* <= 0: keep */
} tidsim_options;

TIDSIM_API void tidsim_options_init(tidsim_options* o);

/* Runs the single scenario in a TOML or JSON file and writes its outputs when
 * an output directory is set. options may be NULL. */
TIDSIM_API tidsim_status tidsim_scenario_run_file(const char* path, const tidsim_options* options,
                                                  tidsim_result** out);
TIDSIM_API void tidsim_result_free(tidsim_result* r);

TIDSIM_API size_t tidsim_result_size(const tidsim_result* r);
TIDSIM_API tidsim_status tidsim_result_point(const tidsim_result* r, size_t i, double* t, double c[3],
                                             tidsim_correlations* corr);
/* TIDSIM_ERR_NO_TRANSITION when D(0) is zero. */
TIDSIM_API tidsim_status tidsim_result_transition(const tidsim_result* r, double* t, int* censored);
TIDSIM_API tidsim_status tidsim_result_final_fidelity(const tidsim_result* r, double* out);
TIDSIM_API tidsim_status tidsim_result_summary_json(const tidsim_result* r, char** out);
TIDSIM_API tidsim_status tidsim_result_trajectory_csv(const tidsim_result* r, char** out);

/* One row per scenario of the file, in file order. Failing scenarios are
 * reported in their row; *failed counts them (may be NULL). */
TIDSIM_API tidsim_status tidsim_sweep_run_file(const char* path, const tidsim_options* options, int parallelism,
                                               char** csv, int* failed);

#ifdef __cplusplus
}
#endif

#endif  // TIDSIM_TIDSIM_H_
