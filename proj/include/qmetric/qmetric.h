// Copyright 2026 The qmetric Authors
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

#ifndef QMETRIC_QMETRIC_H_
#define QMETRIC_QMETRIC_H_

// C interface to the qmetric library.
//
// Every function returning qm_status leaves a description of the last
// failure in qm_last_error() (per thread). Handles are opaque and owned by
// the caller; release them with the matching *_free function.

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QMETRIC_BUILDING)
#define QM_API __declspec(dllexport)
#else
#define QM_API __declspec(dllimport)
#endif
#else
#define QM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
  QM_OK = 0,
  QM_ERR_INTERNAL = 1,
  QM_ERR_PARSE = 2,
  QM_ERR_PARAM = 3,
  QM_ERR_SIZE = 4,
  QM_ERR_INPUT = 5,
  QM_ERR_CONTRACT = 6,
  QM_ERR_RANGE = 7,
  QM_ERR_SHAPE = 8
} qm_status;

typedef enum qm_solver { QM_SOLVER_EXACT = 0, QM_SOLVER_LP = 1 } qm_solver;

typedef enum qm_base {
  QM_BASE_EUCLIDEAN = 0,
  // 1-D: y - x when y >= x, kappa * (x - y) otherwise.
  QM_BASE_ASYM_SCALE = 1
} qm_base;

typedef struct qm_trajset qm_trajset;
typedef struct qm_objset qm_objset;

typedef struct qm_params {
  double c;
  double p;
  double rho;
  double gamma;
  qm_base base;
  double kappa;
} qm_params;

typedef struct qm_report {
  double total;
  double total_pth_power;
  double localisation;
  double missed;
  double false_cost;
  double switch_cost;
} qm_report;

typedef struct qm_step {
  int k;
  double localisation;
  double missed;
  double false_cost;
  double switch_cost;
} qm_step;

#define QM_MAX_POSITIONS 8

typedef struct qm_corruption {
  double detection_probability;
  double clutter_rate;
  double false_track_fraction;
  int false_track_min_length;
  int false_track_max_length;
  double switch_probability;
  // Measurement noise covariance is noise_variance * I.
  double noise_variance;
  // Clutter area is [area_min, area_max] on every position axis.
  double area_min;
  double area_max;
  size_t position_indices[QM_MAX_POSITIONS];
  size_t num_positions;
  uint64_t seed;
} qm_corruption;

// Values in the Monte-Carlo output, per (rho, k).
#define QM_MC_FIELDS 5

QM_API const char* qm_version(void);
QM_API const char* qm_last_error(void);
QM_API const char* qm_status_string(qm_status status);

// c = 1, p = 1, rho = 0.5, gamma = 1, Euclidean base.
QM_API qm_params qm_default_params(void);
// p_D 0.9, clutter 20 per step, false-track fraction 0.005 with lengths
// 1..3, switch probability 0.01, noise variance 4, area [0, 800], positions
// {0, 2}, seed 0.
QM_API qm_corruption qm_default_corruption(void);

// Trajectory sets.
QM_API qm_status qm_trajset_load(const char* path, qm_trajset** out);
QM_API qm_status qm_trajset_parse(const char* text, size_t length, qm_trajset** out);
QM_API qm_status qm_trajset_save(const qm_trajset* set, const char* path);
// JSON text in a buffer allocated by the library; release with qm_string_free.
QM_API qm_status qm_trajset_to_json(const qm_trajset* set, char** out);
QM_API void qm_string_free(char* text);
QM_API qm_status qm_trajset_create(int window, qm_trajset** out);
// Appends a trajectory of num_states states of dimension dim, row-major.
QM_API qm_status qm_trajset_add(qm_trajset* set, int start, size_t dim, size_t num_states, const double* states);
QM_API qm_status qm_trajset_info(const qm_trajset* set, int* window, size_t* count, size_t* dim,
                                 size_t* total_states);
QM_API qm_status qm_trajset_count_at(const qm_trajset* set, int k, size_t* out);
QM_API qm_status qm_trajset_truncate(const qm_trajset* set, int k, qm_trajset** out);
QM_API void qm_trajset_free(qm_trajset* set);

// Object sets. A trajectory file is accepted too and cut at `step`.
QM_API qm_status qm_objset_load(const char* path, int step, qm_objset** out);
QM_API qm_status qm_objset_create(size_t dim, size_t count, const double* data, qm_objset** out);
QM_API qm_status qm_objset_size(const qm_objset* set, size_t* out);
QM_API void qm_objset_free(qm_objset* set);

// GOSPA q-metric between object sets.
QM_API qm_status qm_gospa(const qm_objset* x, const qm_objset* y, const qm_params* params, qm_report* out);
// One report per entry of rhos.
QM_API qm_status qm_gospa_sweep(const qm_objset* x, const qm_objset* y, const qm_params* params, const double* rhos,
                                size_t num_rhos, qm_report* out);

// T-GOSPA q-metric. `steps` may be NULL; otherwise it receives up to
// `capacity` per-step rows and *num_steps is set to the window length.
QM_API qm_status qm_tgospa(const qm_trajset* x, const qm_trajset* y, const qm_params* params, qm_solver solver,
                           qm_report* out, qm_step* steps, size_t capacity, size_t* num_steps);
QM_API qm_status qm_tgospa_sweep(const qm_trajset* x, const qm_trajset* y, const qm_params* params,
                                 qm_solver solver, const double* rhos, size_t num_rhos, qm_report* out);

// Scenario generation and Monte-Carlo evaluation.
QM_API qm_status qm_fig3_scenario(uint64_t seed, qm_trajset** out);
// Corrupted copy of `truth` for run index `run` of a batch.
QM_API qm_status qm_corrupt(const qm_trajset* truth, const qm_corruption* cfg, size_t run, qm_trajset** out);
// RMS T-GOSPA profile over `runs` corruptions of `truth`. The metric is
// evaluated on the position components when project_positions is nonzero.
// out holds num_rhos * T * QM_MC_FIELDS values: for rho r and step k,
// out[((r * T) + k - 1) * QM_MC_FIELDS + f] with f = d, localisation,
// missed, false, switch.
QM_API qm_status qm_montecarlo(const qm_trajset* truth, const qm_corruption* cfg, size_t runs,
                               const qm_params* params, qm_solver solver, int project_positions, const double* rhos,
                               size_t num_rhos, double* out, size_t capacity);
// RMS T-GOSPA at step k over explicit estimates.
QM_API qm_status qm_rms_tgospa(const qm_trajset* truth, const qm_trajset* const* estimates, size_t runs,
                               const qm_params* params, qm_solver solver, int k, double* out);

#ifdef __cplusplus
}
#endif

#endif  // QMETRIC_QMETRIC_H_
