/* SPDX-License-Identifier: Apache-2.0
 *
 * roughscatter: rough-surface radio scattering models, 1 GHz - 1 THz
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 */

#ifndef ROUGHSCATTER_H
#define ROUGHSCATTER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ROUGHSCATTER_BUILDING_LIBRARY)
#define RS_API __declspec(dllexport)
#else
#define RS_API __declspec(dllimport)
#endif
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returning rs_status leaves a message for the calling thread
 * in rs_last_error() when it fails. Angles are radians, lengths metres,
 * frequencies Hz, powers dBm unless a name says otherwise. */
typedef enum rs_status {
    RS_OK = 0,
    RS_ERR_DOMAIN = 1,      /* argument outside the model's domain */
    RS_ERR_SINGULAR = 2,    /* formula singular at the requested point */
    RS_ERR_CONFIG = 3,      /* invalid configuration or scenario */
    RS_ERR_PARSE = 4,       /* malformed input file; message carries the line */
    RS_ERR_IO = 5,          /* file could not be read or written */
    RS_ERR_ARGUMENT = 6,    /* null pointer, bad enum value, index out of range */
    RS_ERR_BUFFER = 7,      /* caller buffer too small; *needed says how large */
    RS_ERR_INTERNAL = 8
} rs_status;

typedef enum rs_polarization { RS_POL_PERPENDICULAR = 0, RS_POL_PARALLEL = 1 } rs_polarization;
typedef enum rs_loss_factor { RS_LOSS_AMENT = 0, RS_LOSS_BOITHIAS = 1, RS_LOSS_BOITHIAS_SQUARED = 2 } rs_loss_factor;
typedef enum rs_lobe_norm { RS_LOBE_LITERAL = 0, RS_LOBE_HEMISPHERE = 1 } rs_lobe_norm;
typedef enum rs_direction { RS_DIR_SPECULAR = 0, RS_DIR_BACKSCATTER = 1 } rs_direction;
typedef enum rs_sweep_model {
    RS_MODEL_DS_BACKSCATTER = 0,
    RS_MODEL_RCS_MONOSTATIC = 1,
    RS_MODEL_REFLECTION = 2,
    RS_MODEL_DS_SPECULAR = 3
} rs_sweep_model;

#define RS_NAME_MAX 96

typedef struct rs_physics {
    double speed_of_light;
    int loss_factor; /* rs_loss_factor */
    double quadrature_rel_tol;
} rs_physics;

typedef struct rs_wave {
    double frequency_hz;
    double theta_i;
    int polarization; /* rs_polarization */
} rs_wave;

typedef struct rs_material {
    char name[RS_NAME_MAX]; /* NUL-terminated, truncated if longer */
    double eps_r;
    double h_rms_m;
    double l_c_m;
    double s_coeff;
    double alpha_r;
    double alpha_i;
    double lambda_mix;
} rs_material;

RS_API const char *rs_version(void);
RS_API const char *rs_last_error(void);
RS_API const char *rs_status_name(rs_status status);

RS_API void rs_physics_default(rs_physics *out);
/* c = 3.0e8 m/s, ament loss factor */
RS_API void rs_physics_paper_repro(rs_physics *out);
/* 0 smooth, 1 intermediate, 2 rough */
RS_API rs_status rs_material_preset(int index, rs_material *out);

/* ---- point computations ------------------------------------------------ */
RS_API rs_status rs_wavelength(double frequency_hz, const rs_physics *phys, double *out_m);
RS_API rs_status rs_critical_height(const rs_wave *wave, const rs_physics *phys, double *out_m);
/* *out_rough = 1 when h0 >= critical height */
RS_API rs_status rs_classify_surface(double h0_m, const rs_wave *wave, const rs_physics *phys, int *out_rough);
RS_API rs_status rs_fresnel_reflection(double eps_r, const rs_wave *wave, double *out);
RS_API rs_status rs_bessel_i0(double x, double *out);
/* *out_clamped (may be NULL) = 1 when the raw value exceeded 1 */
RS_API rs_status rs_scattering_loss_factor(double h_rms_m, const rs_wave *wave, const rs_physics *phys,
                                           double *out_rho, int *out_clamped);
RS_API rs_status rs_rough_reflection(const rs_material *m, const rs_wave *wave, const rs_physics *phys,
                                     double *out);
RS_API rs_status rs_f_alpha(double alpha, double theta_i, int lobe_norm, double rel_tol, double *out);

/* ---- scenarios --------------------------------------------------------- */
/* A scenario bundles link geometry, antennas, physics settings, grids and
 * materials, loaded from a preset name ("table2") or a scenario file. */
typedef struct rs_scenario rs_scenario;

RS_API rs_status rs_scenario_load(const char *preset_or_path, rs_scenario **out);
/* Dotted-key override such as "physics.loss_factor" = "boithias". The value
 * is parsed as YAML; "null" removes the key. On failure the scenario is
 * left unchanged. */
RS_API rs_status rs_scenario_set(rs_scenario *sc, const char *key, const char *value);
RS_API void rs_scenario_free(rs_scenario *sc);

RS_API rs_status rs_scenario_material_count(const rs_scenario *sc, size_t *out);
RS_API rs_status rs_scenario_material(const rs_scenario *sc, size_t index, rs_material *out);
/* Exact, case-insensitive, then unique substring match. */
RS_API rs_status rs_scenario_find_material(const rs_scenario *sc, const char *name, rs_material *out);
RS_API rs_status rs_scenario_physics(const rs_scenario *sc, rs_physics *out);
RS_API rs_status rs_scenario_polarization(const rs_scenario *sc, int *out);
RS_API rs_status rs_scenario_frequency_count(const rs_scenario *sc, size_t *out);
RS_API rs_status rs_scenario_frequency(const rs_scenario *sc, size_t index, double *out_hz);
RS_API rs_status rs_scenario_theta_count(const rs_scenario *sc, size_t *out);
RS_API rs_status rs_scenario_theta(const rs_scenario *sc, size_t index, double *out_rad);
/* Effective configuration as JSON. Writes at most cap bytes including the
 * terminator; *needed (may be NULL) receives the full size. */
RS_API rs_status rs_scenario_json(const rs_scenario *sc, char *buf, size_t cap, size_t *needed);

/* Scenario-bound link computations (antennas, distances, physics and
 * polarization taken from the scenario). */
RS_API rs_status rs_reflected_power(const rs_scenario *sc, const rs_material *m, double frequency_hz,
                                    double theta_i, double *out_dbm);
/* -inf when the lobe vanishes (grazing incidence) */
RS_API rs_status rs_scattered_power_ds(const rs_scenario *sc, const rs_material *m, double frequency_hz,
                                       double theta_i, int direction, double *out_dbm);
/* Dual-lobe scattered power at an arbitrary scatter angle theta_s. */
RS_API rs_status rs_scattered_power_dual(const rs_scenario *sc, const rs_material *m, double frequency_hz,
                                         double theta_i, double theta_s, double *out_dbm);

typedef struct rs_rcs_result {
    double sigma_total;  /* linear, m (per unit length) */
    double sigma_smooth;
    double sigma_rough;
    double chi_s;
    double excluded_slope_mass; /* slope pdf mass dropped as shadowed */
    double power_dbm;           /* monostatic radar equation with sigma_total */
    double envelope_dbm;        /* same with the sinc envelope in sigma_smooth */
} rs_rcs_result;

RS_API rs_status rs_rcs(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                        rs_rcs_result *out);

typedef struct rs_compare_result {
    double reflected_dbm;
    double scattered_dbm; /* NaN when negligible */
    double difference_db; /* NaN when negligible */
    int scattered_negligible;
    double gamma_smooth_sq_db;
    double rho_s_sq_db;
    double friis_path_gain_db;
} rs_compare_result;

RS_API rs_status rs_compare(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                            rs_compare_result *out);

/* ---- tables ------------------------------------------------------------ */
typedef struct rs_table rs_table;

/* threads = 0 uses the hardware concurrency */
RS_API rs_status rs_run_sweep(const rs_scenario *sc, unsigned threads, rs_table **out);
/* Uses the scenario's first frequency and its theta grid. */
RS_API rs_status rs_table2(const rs_scenario *sc, rs_table **out);
RS_API void rs_table_free(rs_table *t);
RS_API rs_status rs_table_row_count(const rs_table *t, size_t *out);
RS_API rs_status rs_table_csv(const rs_table *t, char *buf, size_t cap, size_t *needed);
/* Writes the CSV and its path + ".meta.json" sidecar. */
RS_API rs_status rs_table_export(const rs_table *t, const char *path);

typedef struct rs_sweep_row {
    int model; /* rs_sweep_model */
    char material[RS_NAME_MAX];
    double frequency_hz;
    double theta_i;
    double power_dbm;    /* NaN when ok == 0 */
    double envelope_dbm;
    int ok;
} rs_sweep_row;

typedef struct rs_table2_row {
    double theta_i;
    char material[RS_NAME_MAX];
    double reflected_dbm;
    double scattered_dbm; /* NaN when negligible */
    double difference_db; /* NaN when negligible */
    double paper_reflected_dbm; /* NaN when there is no published value */
    double paper_scattered_dbm;
    int has_note;
} rs_table2_row;

RS_API rs_status rs_table_sweep_row(const rs_table *t, size_t index, rs_sweep_row *out);
RS_API rs_status rs_table_table2_row(const rs_table *t, size_t index, rs_table2_row *out);

/* ---- angular power profiles and fitting -------------------------------- */
typedef struct rs_profile rs_profile;

/* CSV "theta_s_deg,power_dbm" plus key=value sidecar at path + ".meta" */
RS_API rs_status rs_profile_load(const char *path, rs_profile **out);
RS_API rs_status rs_profile_save(const rs_profile *p, const char *path);
RS_API void rs_profile_free(rs_profile *p);
RS_API rs_status rs_profile_sample_count(const rs_profile *p, size_t *out);
RS_API rs_status rs_profile_sample(const rs_profile *p, size_t index, double *theta_s, double *power_dbm);
RS_API rs_status rs_profile_theta_i(const rs_profile *p, double *out);
RS_API rs_status rs_profile_csv(const rs_profile *p, char *buf, size_t cap, size_t *needed);

/* Dual-lobe scattering plus rough reflection at theta_s == theta_i. When
 * theta_s is NULL the scenario's profile grid is used. */
RS_API rs_status rs_profile_predict(const rs_scenario *sc, const rs_material *m, double frequency_hz,
                                    double theta_i, const double *theta_s, size_t n, rs_profile **out);
RS_API rs_status rs_profile_add_noise(const rs_profile *p, double sigma_db, uint64_t seed, rs_profile **out);

typedef struct rs_fit_result {
    double lambda_mix;
    double alpha_r;
    double alpha_i;
    double s_coeff;
    double rss_db2;
    double peak_error_db; /* NaN when no sample lies at the specular angle */
    size_t samples_used;
    int alpha_r_identifiable;
    int alpha_i_identifiable;
    int degenerate;
} rs_fit_result;

/* skeleton supplies eps_r, h_rms and l_c; profile metadata (radius, TX power,
 * gain, frequency) overrides the scenario where present. */
RS_API rs_status rs_fit_dual_lobe(const rs_profile *p, const rs_scenario *sc, const rs_material *skeleton,
                                  rs_fit_result *out);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHSCATTER_H */
