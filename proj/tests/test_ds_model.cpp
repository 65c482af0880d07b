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

#include "roughscatter/ds_model.hpp"
#include "roughscatter/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace roughscatter;

namespace
{
    constexpr double f_literal_a4_30 = 0.59259400007440975; // mpmath oracle
    constexpr double power_e1_ae5 = 1.3262911924324611e-6;  // mpmath oracle

    const PhysicsConfig repro = PhysicsConfig::paper_repro();

    TxParams tx_5cm2()
    {
        return {10.0, Antenna::with_aperture(5e-4), Antenna::with_aperture(5e-4)};
    }

    IncidentWave at(double deg, double f = 500e9) { return {f, deg_to_rad(deg), Polarization::perpendicular}; }

    double db(double a, double b) { return 10.0 * std::log10(a / b); }
}

TEST_CASE("scatter angles")
{
    for (double t : {0.0, 0.1, 0.7, 1.2, half_pi})
    {
        const auto a = scatter_angles(t, -t);
        CHECK(a.psi == -2.0 * t);
        CHECK(a.psi_i == 0.0);
        const auto s = scatter_angles(t, t);
        CHECK(s.psi == 0.0);
    }
    const auto g = ScatterGeometry::backscatter(50.0, 10.0, 0.3);
    CHECK(g.theta_s == -0.3);
    CHECK(g.d_t == 50.0);
    CHECK(g.d_r == 50.0);
}

TEST_CASE("lobe factor properties")
{
    CHECK(lobe_factor(0.0, 1.0) == 1.0);
    CHECK(lobe_factor(0.0, 500.0) == 1.0);
    for (double alpha : {1.0, 2.0, 4.0, 30.0, 1000.0})
    {
        double prev = 1.0;
        for (double psi = 0.0; psi <= pi; psi += pi / 180.0)
        {
            const double v = lobe_factor(psi, alpha);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev);
            CHECK(lobe_factor(-psi, alpha) == v);
            prev = v;
        }
    }
    for (double psi : {0.1, 0.5, 1.0, 2.0, 3.0})
        for (double alpha = 1.0; alpha < 1000.0; alpha *= 1.7)
        {
            // Strict until the wider lobe underflows to zero.
            const double hi = lobe_factor(psi, alpha);
            const double lo = lobe_factor(psi, alpha * 1.7);
            if (hi > 0.0)
                CHECK(lo < hi);
            else
                CHECK(lo == 0.0);
        }
}

TEST_CASE("lobe normalization")
{
    CHECK(f_alpha_r(1.0, deg_to_rad(30), LobeNormalization::literal) == doctest::Approx(pi / 8).epsilon(1e-10));
    CHECK(f_alpha_r(4.0, deg_to_rad(30), LobeNormalization::literal) ==
          doctest::Approx(f_literal_a4_30).epsilon(1e-9));
    CHECK(f_alpha_r(1.0, 0.0, LobeNormalization::hemisphere) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f_alpha_r(2.0, 0.4, LobeNormalization::hemisphere) == doctest::Approx(7.0 / 12.0).epsilon(1e-12));

    for (double d = 1.0; d <= 90.0; d += 0.5)
    {
        const double t = deg_to_rad(d);
        const double ref = pi / 4.0 * std::sin(t);
        CHECK(std::abs(f_alpha_r(1.0, t, LobeNormalization::literal) - ref) <= 1e-9 * ref);
    }
    CHECK_THROWS_AS(f_alpha_r(1.0, 0.0, LobeNormalization::literal), SingularityError);
    CHECK_THROWS_AS(f_alpha_r(1.0, deg_to_rad(0.4), LobeNormalization::literal), SingularityError);
    CHECK_THROWS_AS(f_alpha_r(0.5, 0.3, LobeNormalization::literal), DomainError);
    CHECK(parse_lobe_normalization("hemisphere") == LobeNormalization::hemisphere);
    CHECK_THROWS_AS(parse_lobe_normalization("sphere"), ConfigError);
}

TEST_CASE("single-lobe field")
{
    const auto tx = tx_5cm2();
    auto m = table1_rough();

    SUBCASE("specular direction equals the peak")
    {
        const auto w = at(30);
        const auto g = ScatterGeometry::specular(50, 50, 10, w.theta_i);
        CHECK(scattered_field_sq_single(m, w, g, tx, repro) == scattered_field_sq_peak(m, w, g, tx, repro));
    }

    SUBCASE("angular step 30 to 45 degrees")
    {
        const auto w30 = at(30), w45 = at(45);
        const double e30 = scattered_field_sq_single(m, w30, ScatterGeometry::specular(50, 50, 10, w30.theta_i), tx, repro);
        const double e45 = scattered_field_sq_single(m, w45, ScatterGeometry::specular(50, 50, 10, w45.theta_i), tx, repro);
        CHECK(db(e30, e45) == doctest::Approx(2.39).epsilon(0.01 / 2.39));
    }

    SUBCASE("S scaling")
    {
        const auto w = at(45);
        const auto g = ScatterGeometry::specular(50, 50, 10, w.theta_i);
        auto m10 = m;
        m.s_coeff = 0.05;
        m10.s_coeff = 0.5;
        const double r = scattered_field_sq_single(m10, w, g, tx, repro) / scattered_field_sq_single(m, w, g, tx, repro);
        CHECK(r == doctest::Approx(100.0).epsilon(1e-12));
    }

    SUBCASE("inverse-square distance scaling")
    {
        const auto w = at(40);
        const double near = scattered_field_sq_single(m, w, ScatterGeometry::specular(20, 30, 10, w.theta_i), tx, repro);
        const double far = scattered_field_sq_single(m, w, ScatterGeometry::specular(40, 60, 10, w.theta_i), tx, repro);
        CHECK(db(far, near) == doctest::Approx(-40.0 * std::log10(2.0)).epsilon(1e-12));
    }

    SUBCASE("grazing incidence has no scattered field")
    {
        const auto w = at(90);
        CHECK(scattered_field_sq_single(m, w, ScatterGeometry::specular(50, 50, 10, w.theta_i), tx, repro) == 0.0);
    }
}

TEST_CASE("dual-lobe field")
{
    const auto tx = tx_5cm2();
    auto m = table1_intermediate();
    m.alpha_r = 6.0;
    m.alpha_i = 2.0;
    const auto w = at(35, 142e9);

    SUBCASE("lambda = 1 reduces to the single lobe")
    {
        m.lambda_mix = 1.0;
        for (double ts = -85.0; ts <= 85.0; ts += 5.0)
        {
            ScatterGeometry g{3, 3, 1, deg_to_rad(ts)};
            CHECK(scattered_field_sq_dual(m, w, g, tx, repro) == scattered_field_sq_single(m, w, g, tx, repro));
        }
    }

    SUBCASE("lambda = 0 at the backscatter peak equals the peak field")
    {
        m.lambda_mix = 0.0;
        const auto g = ScatterGeometry::backscatter(3, 1, w.theta_i);
        CHECK(scattered_field_sq_dual(m, w, g, tx, repro) ==
              doctest::Approx(scattered_field_sq_peak(m, w, g, tx, repro)).epsilon(1e-14));
    }

    SUBCASE("equal exponents at normal incidence")
    {
        m.lambda_mix = 0.5;
        m.alpha_r = m.alpha_i = 3.0;
        const IncidentWave w0{142e9, 0.0, Polarization::perpendicular};
        ScatterGeometry g{3, 3, 1, deg_to_rad(20)};
        const double dual = scattered_field_sq_dual(m, w0, g, tx, repro, LobeNormalization::hemisphere);
        const double single = scattered_field_sq_single(m, w0, g, tx, repro, LobeNormalization::hemisphere);
        CHECK(dual == doctest::Approx(single).epsilon(1e-14));
    }

    SUBCASE("convex combination of the two lobes")
    {
        for (double lam = 0.0; lam <= 1.0; lam += 0.125)
        {
            m.lambda_mix = lam;
            for (double ts = -85.0; ts <= 85.0; ts += 5.0)
            {
                ScatterGeometry g{3, 3, 1, deg_to_rad(ts)};
                const double peak = scattered_field_sq_peak(m, w, g, tx, repro);
                const auto a = scatter_angles(w.theta_i, g.theta_s);
                const double fwd = peak * lobe_factor(a.psi, m.alpha_r);
                const double back = peak * lobe_factor(a.psi_i, m.alpha_i);
                const double dual = scattered_field_sq_dual(m, w, g, tx, repro);
                CHECK(dual >= std::min(fwd, back) * (1 - 1e-14));
                CHECK(dual <= std::max(fwd, back) * (1 + 1e-14));
            }
        }
    }
}

TEST_CASE("received power from field")
{
    CHECK(power_from_field_aperture(1.0, 5e-4) == doctest::Approx(power_e1_ae5).epsilon(1e-14));
    CHECK(power_from_field_aperture(0.0, 5e-4) == 0.0);
    const double lambda = 6e-4;
    const double g = 4.0 * pi * 5e-4 / (lambda * lambda);
    CHECK(g == doctest::Approx(17453.3).epsilon(1e-5));
    CHECK(power_from_field(2.5, g, lambda) == doctest::Approx(power_from_field_aperture(2.5, 5e-4)).epsilon(1e-12));
    CHECK_THROWS_AS(power_from_field_aperture(-1.0, 5e-4), DomainError);

    const auto a = Antenna::with_aperture(5e-4);
    CHECK(a.gain_at(lambda) == doctest::Approx(g).epsilon(1e-14));
    const auto f = Antenna::fixed(100.0);
    CHECK(f.aperture_at(lambda) == doctest::Approx(100.0 * lambda * lambda / (4 * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(Antenna::fixed(0.0).validate(), DomainError);
}
