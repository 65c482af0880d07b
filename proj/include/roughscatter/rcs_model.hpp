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

#include "roughscatter/ds_model.hpp"
#include "roughscatter/em_core.hpp"
#include "roughscatter/link_geometry.hpp"

#include <complex>
#include <optional>
#include <string_view>

// Two-scale monostatic radar cross section of a rough plate, per unit length
// (2D RCS, m). The large-scale plate term is weighted by the squared height
// characteristic function; the small-scale term averages patch cross sections
// over a Gaussian distribution of patch slopes h_x = tan(Omega).
namespace roughscatter
{
    enum class RcsPolarization
    {
        VV,
        HH
    };

    std::string_view to_string(RcsPolarization p);
    RcsPolarization parse_rcs_polarization(std::string_view s);

    // Large-scale patch slope spread used when a material does not override it.
    inline constexpr double default_slope_sigma = 0.05;
    // Patch half length L_p as a multiple of the correlation length.
    inline constexpr double default_patch_length_factor = 10.0;

    struct RcsOptions
    {
        RcsPolarization polarization = RcsPolarization::HH;
        std::optional<double> slope_sigma;       // sigma_l; default_slope_sigma when unset
        std::optional<double> patch_half_length; // L_p in m; factor * l_c when unset
        double patch_length_factor = default_patch_length_factor;
    };

    struct RcsSurfaceParams
    {
        double width = 1.0;              // w (m)
        double h_rms = 0.0;              // small-scale rms height (m)
        double l_c = 1e-3;               // correlation length (m)
        double slope_sigma = default_slope_sigma;
        double patch_half_length = 1e-2; // L_p (m)
        RcsPolarization polarization = RcsPolarization::HH;

        void validate() const;

        static RcsSurfaceParams from_material(const Material &m, double width, const RcsOptions &opt = {});
    };

    struct RcsBreakdown
    {
        // linear, m (per unit length)
        double sigma_total = 0.0;
        double sigma_smooth = 0.0;
        double sigma_rough = 0.0;
        double chi_s = 1.0;
        // probability mass of patch slopes dropped because the patch faces away
        double excluded_slope_mass = 0.0;

        double total_db() const { return to_db(sigma_total); }
        double smooth_db() const { return to_db(sigma_smooth); }
        double rough_db() const { return to_db(sigma_rough); }
    };

    // (2 pi w^2 / lambda) [cos(theta_i) sin(x) / x]^2,  x = k0 w cos(theta_i)
    double sigma_smooth(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg);
    // Same with |sin(x)/x| replaced by its bound min(1, 1/|x|).
    double sigma_smooth_envelope(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg);

    // exp(-k0^2 h_rms^2 cos^2 theta_i)
    double chi_s(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg);

    // VV: 2 (1 + sin^2(theta_i - Omega)),  HH: 2 cos^2(theta_i - Omega)
    double s_pp_monostatic(double theta_i, double omega, RcsPolarization pol);

    // Patch kernel Q for slope h_x, evaluated on the half window with a cosine
    // kernel. Throws SingularityError when v_y = 2 k0 cos(theta_i - Omega) = 0.
    double q_monostatic(const RcsSurfaceParams &s, const IncidentWave &wave, double h_x, const PhysicsConfig &cfg);

    // Full-window evaluation with the complex exp(-j v_x x) kernel; the
    // imaginary part is a numerical residual.
    std::complex<double> q_monostatic_complex(const RcsSurfaceParams &s, const IncidentWave &wave, double h_x,
                                              const PhysicsConfig &cfg);

    struct SigmaRoughResult
    {
        double value = 0.0;
        double excluded_slope_mass = 0.0; // pdf mass with |theta_i - Omega| >= 90 deg - eps
    };

    SigmaRoughResult sigma_rough_detail(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg);

    inline double sigma_rough(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        return sigma_rough_detail(s, wave, cfg).value;
    }

    RcsBreakdown rcs_total(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg,
                           bool envelope = false);

    // P_R[dBm] = P_T[dBm] + G_t[dBi] + G_r[dBi] + 20 log10(lambda) + sigma[dB] - 30 log10(4 pi) - 40 log10(d)
    double rcs_received_power_dbm(double p_t_dbm, double g_t_dbi, double g_r_dbi, double lambda,
                                  double sigma_db, double d);

    // Monostatic link: d = link.d_t, both gains from tx. sigma is linear (m or m^2).
    double rcs_received_power(double sigma, const LinkGeometry &link, const TxParams &tx, const IncidentWave &wave,
                              const PhysicsConfig &cfg);
}
