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

#include "roughscatter/em_core.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/units.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace roughscatter;

namespace
{
    // Reference values from tests/oracles/compute_oracles.py (mpmath, 50 digits).
    constexpr double lambda_142ghz_si = 0.0021112144929577465;
    constexpr double gamma_perp_16_60 = -0.77299167746977819;
    constexpr double gamma_perp_2_60 = -0.38196601125010515;
    constexpr double i0_1 = 1.2660658777520083;
    constexpr double i0_10 = 2815.7166284662545;
    constexpr double i0_50 = 2.9325537838493363e+20;
    constexpr double rho_300um_60 = 0.0071918833558263656;
    constexpr double gamma_rough_2_60 = -0.0027470549988010176;
    constexpr double rho_300um_normal = 2.6752879910742397e-9;
    constexpr double boithias_10um = 1.0216925272569548;
    constexpr double boithias_sq_10um = 0.97842396610984535;

    IncidentWave wave(double f, double theta_deg, Polarization p = Polarization::perpendicular)
    {
        return {f, deg_to_rad(theta_deg), p};
    }

    const PhysicsConfig repro = PhysicsConfig::paper_repro();

    double i0_series(double x, int terms)
    {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < terms; ++k)
        {
            term *= (x / 2.0) * (x / 2.0) / (double(k) * double(k));
            sum += term;
        }
        return sum;
    }
}

TEST_CASE("wavelength")
{
    CHECK(wavelength(500e9, repro) == doctest::Approx(6e-4).epsilon(1e-15));
    CHECK(wavelength(1e9, repro) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(wavelength(142e9, PhysicsConfig{}) == doctest::Approx(lambda_142ghz_si).epsilon(1e-15));
    CHECK_THROWS_AS(wavelength(0.0, repro), DomainError);
    CHECK_THROWS_AS(wavelength(-1.0, repro), DomainError);
}

TEST_CASE("critical height and classification")
{
    CHECK(critical_height(wave(500e9, 0), repro) == doctest::Approx(75e-6).epsilon(1e-14));
    CHECK(critical_height(wave(500e9, 60), repro) == doctest::Approx(150e-6).epsilon(1e-12));
    CHECK(critical_height(wave(1e9, 0), repro) == doctest::Approx(37.5e-3).epsilon(1e-14));
    CHECK_THROWS_AS(critical_height(wave(500e9, 90), repro), SingularityError);

    CHECK(classify_surface(300e-6, wave(500e9, 0), repro) == SurfaceClass::rough);
    CHECK(classify_surface(10e-6, wave(500e9, 0), repro) == SurfaceClass::smooth);
    for (double f : {1e9, 100e9, 1e12})
        for (double t : {0.0, 45.0, 89.0})
            CHECK(classify_surface(0.0, wave(f, t), repro) == SurfaceClass::smooth);

    double prev = 0.0;
    for (double t = 0.0; t < 90.0; t += 0.5)
    {
        const double h = critical_height(wave(500e9, t), repro);
        if (t > 0.0)
            CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("fresnel reflection")
{
    CHECK(fresnel_reflection(16, wave(1e9, 0)) == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK(fresnel_reflection(16, wave(1e9, 60)) == doctest::Approx(gamma_perp_16_60).epsilon(1e-14));
    CHECK(fresnel_reflection(2, wave(1e9, 60)) == doctest::Approx(gamma_perp_2_60).epsilon(1e-14));
    for (double eps : {1.5, 4.0, 16.0, 80.0})
    {
        CHECK(fresnel_reflection(eps, wave(1e9, 90)) == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(std::abs(fresnel_reflection(eps, wave(1e9, 0, Polarization::perpendicular))) ==
              doctest::Approx(std::abs(fresnel_reflection(eps, wave(1e9, 0, Polarization::parallel)))).epsilon(1e-15));
        for (double t = 0.0; t <= 90.0; t += 5.0)
            for (auto p : {Polarization::perpendicular, Polarization::parallel})
                CHECK(std::abs(fresnel_reflection(eps, wave(1e9, t, p))) <= 1.0 + 1e-15);
    }
    CHECK_THROWS_AS(fresnel_reflection(0.5, wave(1e9, 10)), DomainError);
}

TEST_CASE("bessel I0")
{
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(i0_1).epsilon(1e-14));
    CHECK(bessel_i0(10.0) == doctest::Approx(i0_10).epsilon(1e-13));
    CHECK(bessel_i0(50.0) == doctest::Approx(i0_50).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_i0(-3.0), DomainError);
    for (double x = 0.0; x <= 50.0; x += 0.25)
    {
        const double v = bessel_i0(x);
        CHECK(v >= 1.0);
        CHECK(std::abs(v - i0_series(x, 80)) <= 1e-12 * i0_series(x, 80));
        CHECK(bessel_i0_scaled(x) == doctest::Approx(v * std::exp(-x)).epsilon(1e-12));
    }
}

TEST_CASE("scattering loss factor")
{
    const auto ament = LossFactorVariant::ament;
    CHECK(scattering_loss_factor(300e-6, wave(500e9, 0), ament, repro) ==
          doctest::Approx(rho_300um_normal).epsilon(1e-12));
    CHECK(scattering_loss_factor(300e-6, wave(500e9, 60), ament, repro) ==
          doctest::Approx(rho_300um_60).epsilon(1e-12));
    for (auto v : {LossFactorVariant::ament, LossFactorVariant::boithias, LossFactorVariant::boithias_squared})
    {
        CHECK(scattering_loss_factor(0.0, wave(500e9, 30), v, repro) == 1.0);
        CHECK(scattering_loss_factor(300e-6, wave(500e9, 90), v, repro) == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("boithias literal exceeds one and is clamped")
    {
        const auto lf = scattering_loss_factor_detail(10e-6, wave(500e9, 0), LossFactorVariant::boithias, repro);
        CHECK(lf.clamped);
        CHECK(lf.rho == 1.0);
        CHECK(lf.raw == doctest::Approx(boithias_10um).epsilon(1e-12));
        const auto sq = scattering_loss_factor_detail(10e-6, wave(500e9, 0), LossFactorVariant::boithias_squared, repro);
        CHECK_FALSE(sq.clamped);
        CHECK(sq.rho == doctest::Approx(boithias_sq_10um).epsilon(1e-12));
    }

    SUBCASE("ament monotonicity")
    {
        const std::vector<double> hs{0, 1e-6, 10e-6, 50e-6, 100e-6, 300e-6, 1e-3};
        const std::vector<double> fs{1e9, 10e9, 100e9, 500e9, 1e12};
        for (double t = 0.0; t <= 90.0; t += 10.0)
            for (double f : fs)
                for (std::size_t i = 1; i < hs.size(); ++i)
                    CHECK(scattering_loss_factor(hs[i], wave(f, t), ament, repro) <=
                          scattering_loss_factor(hs[i - 1], wave(f, t), ament, repro));
        for (double t = 0.0; t <= 90.0; t += 10.0)
            for (double h : hs)
                for (std::size_t i = 1; i < fs.size(); ++i)
                    CHECK(scattering_loss_factor(h, wave(fs[i], t), ament, repro) <=
                          scattering_loss_factor(h, wave(fs[i - 1], t), ament, repro));
        for (double f : fs)
            for (double h : hs)
                for (double t = 1.0; t <= 90.0; t += 1.0)
                    CHECK(scattering_loss_factor(h, wave(f, t), ament, repro) >=
                          scattering_loss_factor(h, wave(f, t - 1.0), ament, repro));
    }
}

TEST_CASE("rough reflection coefficient")
{
    auto m = table1_rough();
    CHECK(rough_reflection_coefficient(m, wave(500e9, 60), repro) ==
          doctest::Approx(gamma_rough_2_60).epsilon(1e-12));
    CHECK(rough_reflection_coefficient(m, wave(500e9, 90), repro) == doctest::Approx(-1.0).epsilon(1e-15));
    m.h_rms = 0.0;
    CHECK(rough_reflection_coefficient(m, wave(500e9, 37), repro) == fresnel_reflection(2.0, wave(500e9, 37)));

    for (const auto &mat : {table1_smooth(), table1_intermediate(), table1_rough()})
        for (double f : {1e9, 100e9, 1e12})
            for (double t = 0.0; t <= 90.0; t += 3.0)
                for (auto p : {Polarization::perpendicular, Polarization::parallel})
                {
                    const auto w = wave(f, t, p);
                    const double gr = std::abs(rough_reflection_coefficient(mat, w, repro));
                    const double gs = std::abs(fresnel_reflection(mat.eps_r, w));
                    CHECK(gr <= gs);
                    CHECK(gs <= 1.0 + 1e-15);
                }
}

TEST_CASE("material presets and validation")
{
    const auto s = table1_smooth();
    CHECK(s.name == "Material 1 - Smooth");
    CHECK(s.eps_r == 16.0);
    CHECK(s.h_rms == um_to_m(10));
    CHECK(s.l_c == um_to_m(1000));
    CHECK(s.s_coeff == 0.05);
    CHECK(table1_intermediate().h_rms == um_to_m(100));
    CHECK(table1_rough().s_coeff == 0.5);

    auto bad = s;
    bad.eps_r = 0.9;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = s;
    bad.s_coeff = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = s;
    bad.h_rms = -1e-6;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = s;
    bad.lambda_mix = 1.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    CHECK(parse_polarization("perp") == Polarization::perpendicular);
    CHECK(parse_polarization("par") == Polarization::parallel);
    CHECK_THROWS_AS(parse_polarization("circular"), ConfigError);
    CHECK(parse_loss_factor_variant("boithias_squared") == LossFactorVariant::boithias_squared);
    CHECK(to_string(LossFactorVariant::ament) == "ament");
}
