// SPDX-License-Identifier: Apache-2.0
//
// roughscatter: rough-surface radio scattering models, 1 GHz - 1 THz
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "roughscatter/config.hpp"
#include "roughscatter/csv.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace roughscatter;

namespace
{
    SweepSpec point_spec()
    {
        SweepSpec s;
        s.name = "point";
        s.convention_id = "point";
        s.frequencies = {100e9};
        s.theta_i_grid = {deg_to_rad(30)};
        s.materials = {table1_rough()};
        s.models = {SweepModel::reflection};
        s.tx = {10.0, Antenna::with_aperture(5e-4), Antenna::with_aperture(5e-4)};
        s.cfg = PhysicsConfig::paper_repro();
        return s;
    }

    std::map<std::pair<double, std::string>, double> by_angle_material(const SweepTable &t, double f)
    {
        std::map<std::pair<double, std::string>, double> out;
        for (const auto &r : t.rows)
            if (r.frequency == f)
                out[{r.theta_i, r.material}] = r.power_dbm;
        return out;
    }
}

TEST_CASE("single-point sweep")
{
    const auto t = run_sweep(point_spec(), 1);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].ok());
    CHECK(t.rows[0].material == "Material 3 - Rough");
    CHECK(t.convention_id == "point");
}

TEST_CASE("sweep validation happens before evaluation")
{
    auto s = point_spec();
    s.frequencies.clear();
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s = point_spec();
    s.theta_i_grid = {deg_to_rad(95)};
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s = point_spec();
    s.models = {SweepModel::ds_backscatter};
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s = point_spec();
    s.materials[0].s_coeff = 2.0;
    CHECK_THROWS(run_sweep(s));
}

TEST_CASE("per-point singularities are reported, not thrown")
{
    auto s = point_spec();
    s.models = {SweepModel::ds_specular};
    s.theta_i_grid = {0.0, deg_to_rad(10)};
    const auto t = run_sweep(s, 1);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].status.rfind("singular:", 0) == 0);
    CHECK(std::isnan(t.rows[0].power_dbm));
    CHECK(t.rows[1].ok());
}

TEST_CASE("sweep is deterministic across thread counts")
{
    auto spec = load_preset("fig5").sweep;
    spec.theta_i_grid.resize(20);
    const auto a = sweep_to_csv(run_sweep(spec, 1));
    const auto b = sweep_to_csv(run_sweep(spec, 4));
    const auto c = sweep_to_csv(run_sweep(spec, 3));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("frequency and roughness trends of the DS backscatter presets")
{
    const auto fa = load_preset("fig4a").sweep;
    const auto ta = run_sweep(fa, 1);
    for (double d : {10.0, 30.0, 60.0})
    {
        double prev = -INFINITY;
        for (double f : fa.frequencies)
        {
            const auto m = by_angle_material(ta, f);
            const double p = m.at({deg_to_rad(d), "Material 2 - Intermediate"});
            CHECK(p > prev);
            prev = p;
        }
    }

    const auto fc = load_preset("fig4c").sweep;
    const auto tc = run_sweep(fc, 1);
    const auto mc = by_angle_material(tc, 100e9);
    for (double t : fc.theta_i_grid)
    {
        if (rad_to_deg(t) >= 80.0)
            continue;
        const double s = mc.at({t, "Material 1 - Smooth"});
        const double i = mc.at({t, "Material 2 - Intermediate"});
        const double r = mc.at({t, "Material 3 - Rough"});
        CHECK(r > i);
        CHECK(i > s);
    }
}

TEST_CASE("table2 generation")
{
    const auto t = generate_table2(load_preset("table2").sweep);
    REQUIRE(t.rows.size() == 15);
    std::size_t noted = 0;
    for (const auto &r : t.rows)
    {
        REQUIRE(r.paper_reflected_dbm.has_value());
        const double deg = std::round(rad_to_deg(r.theta_i));
        if (r.material != "Material 2 - Intermediate")
            CHECK(std::abs(r.result.reflected_dbm - *r.paper_reflected_dbm) < 0.1);
        else
            CHECK(std::abs(r.result.reflected_dbm - *r.paper_reflected_dbm) < 2.5);
        if (!r.note.empty())
            ++noted;
        CHECK(r.result.scattered_negligible() == (deg == 90.0));
        CHECK(r.paper_scattered_dbm.has_value() == (deg != 90.0));
    }
    CHECK(noted == 4);

    CHECK(*published_reflected_dbm(0, 45) == -4.83);
    CHECK(*published_reflected_dbm(2, 45) == -98.75);
    CHECK(*published_reflected_dbm(1, 45) == -19.47);
    CHECK_FALSE(published_reflected_dbm(1, 44).has_value());
    CHECK_FALSE(published_scattered_dbm(1, 90).has_value());
}

TEST_CASE("table2 values attach only to exemplar materials")
{
    auto spec = load_preset("table2").sweep;
    spec.materials = {table1_rough()};
    spec.materials[0].name = "custom";
    auto t = generate_table2(spec);
    for (const auto &r : t.rows)
        CHECK_FALSE(r.paper_reflected_dbm.has_value());

    spec.materials = {table1_rough()};
    t = generate_table2(spec);
    REQUIRE(t.rows.size() == 5);
    CHECK(*t.rows[3].paper_reflected_dbm == -52.81);
}

TEST_CASE("sweep model names")
{
    for (auto m : {SweepModel::ds_backscatter, SweepModel::rcs_monostatic, SweepModel::reflection, SweepModel::ds_specular})
        CHECK(parse_sweep_model(to_string(m)) == m);
    CHECK_THROWS_AS(parse_sweep_model("bistatic"), ConfigError);
}
