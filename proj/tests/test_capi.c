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

/* Exercises the public C interface from plain C. */

#include "roughscatter/roughscatter.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;
static int checks = 0;

#define CHECK(cond)                                                          \
    do                                                                       \
    {                                                                        \
        ++checks;                                                            \
        if (!(cond))                                                         \
        {                                                                    \
            ++failures;                                                      \
            fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n",     \
                    __FILE__, __LINE__, #cond, rs_last_error());             \
        }                                                                    \
    } while (0)

#define CHECK_OK(expr) CHECK((expr) == RS_OK)
#define NEAR(a, b, tol) (fabs((a) - (b)) <= (tol))

static const double deg = 3.14159265358979323846 / 180.0;

static void point_functions(void)
{
    rs_physics phys;
    rs_physics_paper_repro(&phys);
    CHECK(phys.speed_of_light == 3.0e8);

    rs_wave w = {500e9, 0.0, RS_POL_PERPENDICULAR};
    double v = 0.0;
    CHECK_OK(rs_wavelength(500e9, &phys, &v));
    CHECK(NEAR(v, 6e-4, 1e-18));
    CHECK_OK(rs_critical_height(&w, &phys, &v));
    CHECK(NEAR(v, 75e-6, 1e-18));

    int rough = -1;
    CHECK_OK(rs_classify_surface(300e-6, &w, &phys, &rough));
    CHECK(rough == 1);

    w.theta_i = 60 * deg;
    CHECK_OK(rs_fresnel_reflection(16.0, &w, &v));
    CHECK(NEAR(v, -0.77299167746977819, 1e-14));
    CHECK_OK(rs_bessel_i0(10.0, &v));
    CHECK(NEAR(v, 2815.7166284662545, 1e-9));

    int clamped = -1;
    CHECK_OK(rs_scattering_loss_factor(300e-6, &w, &phys, &v, &clamped));
    CHECK(NEAR(v, 0.0071918833558263656, 1e-15));
    CHECK(clamped == 0);

    rs_material m;
    CHECK_OK(rs_material_preset(2, &m));
    CHECK(strcmp(m.name, "Material 3 - Rough") == 0);
    CHECK_OK(rs_rough_reflection(&m, &w, &phys, &v));
    CHECK(NEAR(v, -0.0027470549988010176, 1e-15));
    CHECK(rs_material_preset(3, &m) == RS_ERR_ARGUMENT);

    CHECK_OK(rs_f_alpha(1.0, 30 * deg, RS_LOBE_LITERAL, 1e-10, &v));
    CHECK(NEAR(v, 0.39269908169872415, 1e-10));
    CHECK(rs_f_alpha(1.0, 0.0, RS_LOBE_LITERAL, 1e-10, &v) == RS_ERR_SINGULAR);
    CHECK(strlen(rs_last_error()) > 0);

    CHECK(rs_wavelength(-1.0, &phys, &v) == RS_ERR_DOMAIN);
    CHECK(rs_wavelength(1e9, &phys, NULL) == RS_ERR_ARGUMENT);
    CHECK(strcmp(rs_status_name(RS_ERR_IO), "io") == 0);
    CHECK(strcmp(rs_status_name(RS_OK), "ok") == 0);
    CHECK(rs_version() != NULL && strlen(rs_version()) > 0);
}

static void scenario_functions(void)
{
    rs_scenario *sc = NULL;
    CHECK(rs_scenario_load("definitely-not-a-preset", &sc) == RS_ERR_IO);
    CHECK(sc == NULL);
    CHECK_OK(rs_scenario_load("table2", &sc));
    if (!sc)
        return;

    size_t n = 0;
    CHECK_OK(rs_scenario_material_count(sc, &n));
    CHECK(n == 3);
    CHECK_OK(rs_scenario_theta_count(sc, &n));
    CHECK(n == 5);

    rs_material m;
    CHECK_OK(rs_scenario_find_material(sc, "rough", &m));
    double p = 0.0;
    CHECK_OK(rs_reflected_power(sc, &m, 500e9, 60 * deg, &p));
    CHECK(NEAR(p, -52.81, 0.01));

    rs_compare_result cr;
    CHECK_OK(rs_compare(sc, &m, 500e9, 90 * deg, &cr));
    CHECK(cr.scattered_negligible == 1);
    CHECK(isnan(cr.scattered_dbm));

    /* Failed override leaves the scenario unchanged. */
    CHECK(rs_scenario_set(sc, "physics.polarization", "circular") == RS_ERR_CONFIG);
    int pol = -1;
    CHECK_OK(rs_scenario_polarization(sc, &pol));
    CHECK(pol == RS_POL_PERPENDICULAR);
    CHECK_OK(rs_scenario_set(sc, "physics.polarization", "par"));
    CHECK_OK(rs_scenario_polarization(sc, &pol));
    CHECK(pol == RS_POL_PARALLEL);
    CHECK_OK(rs_scenario_set(sc, "physics.polarization", "perp"));

    size_t needed = 0;
    char small[8];
    CHECK(rs_scenario_json(sc, small, sizeof small, &needed) == RS_ERR_BUFFER);
    CHECK(needed > sizeof small);
    char *json = malloc(needed);
    CHECK_OK(rs_scenario_json(sc, json, needed, &needed));
    CHECK(strstr(json, "\"convention_id\"") != NULL);
    free(json);

    rs_table *t = NULL;
    CHECK_OK(rs_table2(sc, &t));
    CHECK_OK(rs_table_row_count(t, &n));
    CHECK(n == 15);
    rs_table2_row row;
    int within = 0;
    for (size_t i = 0; i < n; ++i)
    {
        CHECK_OK(rs_table_table2_row(t, i, &row));
        if (strstr(row.material, "Intermediate") == NULL && NEAR(row.reflected_dbm, row.paper_reflected_dbm, 0.1))
            ++within;
    }
    CHECK(within == 10);
    CHECK(rs_table_table2_row(t, n, &row) == RS_ERR_ARGUMENT);
    rs_sweep_row srow;
    CHECK(rs_table_sweep_row(t, 0, &srow) == RS_ERR_ARGUMENT);
    CHECK_OK(rs_table_csv(t, NULL, 0, &needed));
    CHECK(needed > 100);
    rs_table_free(t);

    CHECK_OK(rs_scenario_set(sc, "models", "[reflection]"));
    CHECK_OK(rs_run_sweep(sc, 2, &t));
    CHECK_OK(rs_table_row_count(t, &n));
    CHECK(n == 15);
    CHECK_OK(rs_table_sweep_row(t, 0, &srow));
    CHECK(srow.model == RS_MODEL_REFLECTION);
    CHECK(srow.ok == 1);
    rs_table_free(t);

    rs_rcs_result rr;
    CHECK(rs_rcs(sc, &m, 100e9, 30 * deg, &rr) == RS_ERR_CONFIG); /* not monostatic */
    CHECK_OK(rs_scenario_set(sc, "link.monostatic", "true"));
    CHECK_OK(rs_rcs(sc, &m, 100e9, 30 * deg, &rr));
    CHECK(NEAR(rr.sigma_total, rr.sigma_rough + rr.chi_s * rr.chi_s * rr.sigma_smooth, 1e-12 * rr.sigma_total));
    CHECK_OK(rs_scattered_power_ds(sc, &m, 100e9, 30 * deg, RS_DIR_BACKSCATTER, &p));
    CHECK(isfinite(p));

    rs_scenario_free(sc);
    rs_scenario_free(NULL);
}

static void profile_functions(void)
{
    rs_scenario *sc = NULL;
    CHECK_OK(rs_scenario_load("drywall142", &sc));
    if (!sc)
        return;
    rs_material truth;
    CHECK_OK(rs_scenario_material(sc, 0, &truth));
    truth.lambda_mix = 0.65;
    truth.alpha_r = 4.0;
    truth.alpha_i = 2.0;
    truth.s_coeff = 0.3;

    rs_profile *p = NULL;
    CHECK_OK(rs_profile_predict(sc, &truth, 142e9, 30 * deg, NULL, 0, &p));
    size_t n = 0;
    CHECK_OK(rs_profile_sample_count(p, &n));
    CHECK(n == 17);

    rs_fit_result r;
    CHECK_OK(rs_fit_dual_lobe(p, sc, &truth, &r));
    CHECK(NEAR(r.lambda_mix, 0.65, 0.02));
    CHECK(NEAR(r.alpha_r, 4.0, 0.2));
    CHECK(NEAR(r.s_coeff, 0.3, 0.006));

    rs_profile *noisy = NULL;
    CHECK_OK(rs_profile_add_noise(p, 1.0, 99, &noisy));
    double a = 0, b = 0, t = 0;
    CHECK_OK(rs_profile_sample(p, 3, &t, &a));
    CHECK_OK(rs_profile_sample(noisy, 3, &t, &b));
    CHECK(a != b);

    const double grid[3] = {-10 * deg, 0.0, 10 * deg};
    rs_profile *small = NULL;
    CHECK_OK(rs_profile_predict(sc, &truth, 142e9, 10 * deg, grid, 3, &small));
    CHECK_OK(rs_profile_sample_count(small, &n));
    CHECK(n == 3);
    rs_profile *missing = NULL;
    CHECK(rs_profile_load("/nonexistent/profile.csv", &missing) == RS_ERR_IO);
    CHECK(missing == NULL);

    rs_profile_free(small);
    rs_profile_free(noisy);
    rs_profile_free(p);
    rs_scenario_free(sc);
}

int main(void)
{
    point_functions();
    scenario_functions();
    profile_functions();
    printf("%d checks, %d failures\n", checks, failures);
    return failures == 0 ? 0 : 1;
}
