// Copyright 2026 The curres Authors
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


/* C interface to libcurres. Every function returns a curres_status; on
 * failure curres_last_error() describes the problem (thread-local). Strings
 * returned through char** are owned by the caller and released with
 * curres_string_free. */

#ifndef CURRES_CURRES_H_
#define CURRES_CURRES_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CURRES_BUILDING_LIBRARY)
#define CURRES_API __declspec(dllexport)
#else
#define CURRES_API __declspec(dllimport)
#endif
#else
#define CURRES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum curres_status {
  CURRES_OK = 0,
  CURRES_INVALID_ARGUMENT = 1,
  CURRES_GRID_MISMATCH = 2,
  CURRES_NOT_IN_DOMAIN = 3,
  CURRES_ASSUMPTION_VIOLATED = 4,
  CURRES_CONFIGURATION = 5,
  CURRES_SIZE_LIMIT = 6,
  CURRES_IO = 7,
  CURRES_INTERNAL = 8
} curres_status;

typedef enum curres_side { CURRES_LOWER = 0, CURRES_UPPER = 1 } curres_side;

/* Macroscopic profile: atom at the origin plus a piecewise-constant density. */
typedef struct curres_profile curres_profile;
/* Particle configuration on {0..N}. */
typedef struct curres_config curres_config;

CURRES_API const char* curres_version(void);
CURRES_API const char* curres_last_error(void);
CURRES_API const char* curres_status_name(curres_status status);
CURRES_API void curres_string_free(char* s);

/* Profiles */
CURRES_API curres_status curres_profile_create(double atom, const double* density, size_t cells,
                                               curres_profile** out);
CURRES_API curres_status curres_profile_uniform(size_t cells, double value, curres_profile** out);
/* Accepts a stored profile or a profile spec ({"kind": ...}) built on `cells`. */
CURRES_API curres_status curres_profile_from_json(const char* json, size_t cells,
                                                  curres_profile** out);
CURRES_API curres_status curres_profile_load(const char* path, size_t cells, curres_profile** out);
CURRES_API curres_status curres_profile_save(const curres_profile* p, const char* path);
CURRES_API curres_status curres_profile_to_json(const curres_profile* p, char** out);
CURRES_API void curres_profile_free(curres_profile* p);

CURRES_API curres_status curres_profile_cells(const curres_profile* p, size_t* out);
CURRES_API curres_status curres_profile_atom(const curres_profile* p, double* out);
/* Copies min(len, cells) densities into buf. */
CURRES_API curres_status curres_profile_density(const curres_profile* p, double* buf, size_t len);
CURRES_API curres_status curres_tail_mass(const curres_profile* p, double r, double* out);
/* *has_edge = 0 when F > 0 on [0,1). */
CURRES_API curres_status curres_profile_edge(const curres_profile* p, double* edge, int* has_edge);
CURRES_API curres_status curres_leq(const curres_profile* u, const curres_profile* v, double tol,
                                    int* out);
CURRES_API curres_status curres_tv_distance(const curres_profile* u, const curres_profile* v,
                                            double* out);

/* Macroscopic dynamics */
CURRES_API curres_status curres_cut_and_paste(const curres_profile* u, double j, double delta,
                                              curres_profile** out);
CURRES_API curres_status curres_heat_convolve(const curres_profile* u, double t,
                                              curres_profile** out);
CURRES_API curres_status curres_barrier_evolve(const curres_profile* u, curres_side side, double j,
                                               double delta, long steps, curres_profile** out);
/* tau <= 0 uses t. gap, depth and flagged may be NULL. */
CURRES_API curres_status curres_separating_element(const curres_profile* u, double j, double t,
                                                   int depth, double gap_tol, double tau,
                                                   curres_profile** out, double* gap, int* depth_out,
                                                   int* flagged);
CURRES_API curres_status curres_explicit_no_edge(const curres_profile* u, double j, double t,
                                                 curres_profile** out, int* edge_formed);

/* Particle configurations */
CURRES_API curres_status curres_config_from_occupations(const int* occ, size_t sites,
                                                        curres_config** out);
CURRES_API curres_status curres_sample_initial(const curres_profile* rho, long n, double j,
                                               uint64_t seed, double t, curres_config** out);
CURRES_API void curres_config_free(curres_config* c);
CURRES_API curres_status curres_config_sites(const curres_config* c, size_t* out);
CURRES_API curres_status curres_config_count(const curres_config* c, long* out);
CURRES_API curres_status curres_config_occupations(const curres_config* c, int* buf, size_t len);
/* Runs the process with reservoirs from macroscopic time 0 to t. */
CURRES_API curres_status curres_simulate(const curres_config* init, double j, uint64_t seed,
                                         double t, curres_config** out);
CURRES_API curres_status curres_duality_check(const int* occ, size_t sites, const int* walkers,
                                              size_t n_walkers, double t, double* lhs,
                                              double* rhs);

/* Experiments; each returns a JSON report and writes files when out_dir is
 * non-empty. */
CURRES_API curres_status curres_run_simulate(const curres_profile* u, long n, double j, double t,
                                             long replicas, uint64_t seed, const char* out_dir,
                                             char** report);
CURRES_API curres_status curres_run_barriers(const curres_profile* u, double j, double t,
                                             int depth, const char* out_dir, char** report);
CURRES_API curres_status curres_run_separate(const curres_profile* u, double j, double t,
                                             int depth, double gap_tol, double tau,
                                             const char* out_dir, char** report);
CURRES_API curres_status curres_run_couple(const curres_profile* u, long n, double j,
                                           double delta, double delta_fine, double t,
                                           long samples, uint64_t seed, char** report);
CURRES_API curres_status curres_compare(const char* config_json, char** report);
/* Suites: algebra, kernel, barriers, coupling, hydro, duality, longtime, all.
 * *all_passed may be NULL. */
CURRES_API curres_status curres_run_acceptance(const char* suite, char** report, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* CURRES_CURRES_H_ */
