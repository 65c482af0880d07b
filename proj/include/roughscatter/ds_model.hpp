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

#include "roughscatter/em_core.hpp"
#include "roughscatter/units.hpp"

#include <string_view>

// Directive scattering (DS) model: cosine-power scattering lobes steered to the
// specular direction, optionally with a second lobe pointing back toward the
// transmitter.
//
// Angle convention (all in the plane of incidence, measured from the normal):
//   psi   = theta_s - theta_i   angle to the specular direction
//   psi_i = theta_s + theta_i   angle to the incident ray (back toward TX)
// so the specular direction has psi = 0 and monostatic backscatter
// (theta_s = -theta_i) has psi = -2 theta_i, psi_i = 0.
namespace roughscatter
{
    enum class LobeNormalization
    {
        literal,   // integral over theta_s in [-pi/2, pi/2] weighted by sin(theta_s)
        hemisphere // integral over psi in [0, pi/2] weighted by sin(psi); independent of theta_i
    };

    std::string_view to_string(LobeNormalization n);
    LobeNormalization parse_lobe_normalization(std::string_view s);

    // The literal normalization tends to zero at normal incidence; below this
    // incidence angle it is rejected rather than extrapolated.
    inline constexpr double literal_angular_floor = deg_to_rad(0.5);

    struct ScatterAngles
    {
        double psi = 0.0;
        double psi_i = 0.0;
    };

    ScatterAngles scatter_angles(double theta_i, double theta_s);

    struct ScatterGeometry
    {
        double d_t = 1.0;     // TX to surface (m)
        double d_r = 1.0;     // surface to RX (m)
        double length = 1.0;  // illuminated scatterer extent l (m)
        double theta_s = 0.0; // scatter angle (rad), [-pi/2, pi/2]

        void validate() const;

        static ScatterGeometry specular(double d_t, double d_r, double length, double theta_i);
        static ScatterGeometry backscatter(double d, double length, double theta_i);
    };

    enum class GainMode
    {
        fixed_gain,
        constant_aperture // gain follows G = 4 pi A_e / lambda^2
    };

    struct Antenna
    {
        GainMode mode = GainMode::constant_aperture;
        double gain = 1.0;     // linear, used in fixed_gain mode
        double aperture = 0.0; // m^2, used in constant_aperture mode

        double gain_at(double lambda) const;
        double aperture_at(double lambda) const;
        void validate() const;

        static Antenna fixed(double gain_linear);
        static Antenna with_aperture(double aperture_m2);
    };

    struct TxParams
    {
        double p_t = 1.0; // transmit power (W)
        Antenna tx;
        Antenna rx;

        void validate() const;
        // K = sqrt(60 P_t G_t), recomputed per wavelength in constant-aperture mode.
        double k_factor(double lambda) const;
    };

    // ((1 + cos psi) / 2)^alpha
    double lobe_factor(double psi, double alpha);

    // Normalization F_alpha so the scattering lobe carries the total scattered power.
    double f_alpha_r(double alpha, double theta_i, LobeNormalization variant, double rel_tol = 1e-9);

    // |E_s0|^2, the lobe peak: (S K / (d_t d_r))^2 * l cos(theta_i) / F_alpha_R.
    double scattered_field_sq_peak(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                   const TxParams &tx, const PhysicsConfig &cfg,
                                   LobeNormalization norm = LobeNormalization::literal);

    // Single forward lobe, |E_s|^2 in (V/m)^2.
    double scattered_field_sq_single(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                     const TxParams &tx, const PhysicsConfig &cfg,
                                     LobeNormalization norm = LobeNormalization::literal);

    // Forward lobe weighted by lambda_mix plus back lobe weighted by 1 - lambda_mix.
    double scattered_field_sq_dual(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                   const TxParams &tx, const PhysicsConfig &cfg,
                                   LobeNormalization norm = LobeNormalization::literal);

    // P_r = |E|^2 G_r lambda^2 / (480 pi^2)
    double power_from_field(double e_sq, double gain_r, double lambda);
    // P_r = |E|^2 / (120 pi) * A_e
    double power_from_field_aperture(double e_sq, double aperture);
}
