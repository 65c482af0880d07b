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

#pragma once

#include <string>
#include <string_view>

namespace roughscatter
{
    enum class Polarization
    {
        perpendicular, // E field normal to the plane of incidence (TE)
        parallel       // E field in the plane of incidence (TM)
    };

    // Scattering loss factor rho_s applied to the smooth reflection coefficient.
    //   ament            exp(-8 u^2),                   u = pi h_rms cos(theta_i) / lambda
    //   boithias         exp(-8 u^2) * I0(8 u)          (argument as commonly printed, unsquared)
    //   boithias_squared exp(-8 u^2) * I0(8 u^2)        (standard Boithias form)
    enum class LossFactorVariant
    {
        ament,
        boithias,
        boithias_squared
    };

    enum class SurfaceClass
    {
        smooth,
        rough
    };

    std::string_view to_string(Polarization p);
    std::string_view to_string(LossFactorVariant v);
    std::string_view to_string(SurfaceClass c);
    Polarization parse_polarization(std::string_view s);
    LossFactorVariant parse_loss_factor_variant(std::string_view s);

    // Electromagnetic and roughness description of a surface. Lengths in meters.
    struct Material
    {
        std::string name;
        double eps_r = 1.0;      // relative permittivity (real, >= 1)
        double h_rms = 0.0;      // rms surface height
        double l_c = 1e-3;       // correlation length
        double s_coeff = 1.0;    // scattering coefficient S, (0, 1]
        double alpha_r = 1.0;    // forward lobe width exponent
        double alpha_i = 1.0;    // back lobe width exponent
        double lambda_mix = 1.0; // dual-lobe mixing factor, 1 = forward lobe only

        // Throws DomainError naming the offending field.
        void validate() const;

        bool operator==(const Material &) const = default;
    };

    struct IncidentWave
    {
        double frequency = 0.0; // Hz
        double theta_i = 0.0;   // rad from the surface normal, [0, pi/2]
        Polarization polarization = Polarization::perpendicular;

        void validate() const;
    };

    struct PhysicsConfig
    {
        double speed_of_light = 299792458.0;
        LossFactorVariant loss_factor = LossFactorVariant::ament;
        double quadrature_rel_tol = 1e-9;

        void validate() const;

        // c = 3.0e8 m/s; reproduces the tabulated 500 GHz reference values,
        // which assume lambda = 0.6 mm exactly.
        static PhysicsConfig paper_repro();
    };

    // The three exemplar materials (smooth, intermediate, rough), in that order.
    Material table1_smooth();
    Material table1_intermediate();
    Material table1_rough();

    double wavelength(double frequency, const PhysicsConfig &cfg);

    // Rayleigh criterion h_c = lambda / (8 cos theta_i). Throws SingularityError
    // at grazing incidence.
    double critical_height(const IncidentWave &wave, const PhysicsConfig &cfg);

    // h0 is the min-to-max protuberance height (not h_rms).
    SurfaceClass classify_surface(double h0, const IncidentWave &wave, const PhysicsConfig &cfg);

    // Real Fresnel coefficient for a lossless half space. At exact grazing the
    // limit (-1 perpendicular, +1 parallel) is returned.
    double fresnel_reflection(double eps_r, const IncidentWave &wave);

    // Modified Bessel function of the first kind, order zero.
    double bessel_i0(double x);
    // exp(-x) * I0(x); finite for any x >= 0.
    double bessel_i0_scaled(double x);

    struct LossFactor
    {
        double rho = 1.0;
        bool clamped = false; // raw value exceeded 1 and was clamped
        double raw = 1.0;
    };

    LossFactor scattering_loss_factor_detail(double h_rms, const IncidentWave &wave,
                                             LossFactorVariant variant, const PhysicsConfig &cfg);

    inline double scattering_loss_factor(double h_rms, const IncidentWave &wave,
                                         LossFactorVariant variant, const PhysicsConfig &cfg)
    {
        return scattering_loss_factor_detail(h_rms, wave, variant, cfg).rho;
    }

    // Gamma_rough = rho_s * Gamma_smooth with the loss variant from cfg.
    double rough_reflection_coefficient(const Material &m, const IncidentWave &wave,
                                        const PhysicsConfig &cfg);
}
