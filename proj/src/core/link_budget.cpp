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

#include "roughscatter/link_budget.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/units.hpp"

#include <cmath>
#include <limits>

namespace roughscatter
{
    namespace
    {
        double friis_path_gain(const TxParams &tx, double lambda, double d)
        {
            const double g = tx.tx.gain_at(lambda) * tx.rx.gain_at(lambda);
            const double x = lambda / (4.0 * pi * d);
            return g * x * x;
        }

        ScatterGeometry geometry_for(const LinkGeometry &link, const IncidentWave &wave, ScatterDirection dir)
        {
            if (dir == ScatterDirection::backscatter)
            {
                if (!link.monostatic)
                    throw ConfigError("backscatter evaluation requires a monostatic link");
                return ScatterGeometry::backscatter(link.d_t, link.scatterer_length, wave.theta_i);
            }
            return ScatterGeometry::specular(link.d_t, link.d_r, link.scatterer_length, wave.theta_i);
        }
    }

    double reflected_received_power(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                    const TxParams &tx, const PhysicsConfig &cfg)
    {
        link.validate();
        tx.validate();
        const double lambda = wavelength(wave.frequency, cfg);
        const double gamma = rough_reflection_coefficient(m, wave, cfg);
        const double p = tx.p_t * friis_path_gain(tx, lambda, link.d_t + link.d_r) * gamma * gamma;
        return watt_to_dbm(p);
    }

    double scattered_received_power_ds(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                       const TxParams &tx, const PhysicsConfig &cfg, ScatterDirection dir,
                                       LobeNormalization norm)
    {
        link.validate();
        const auto geom = geometry_for(link, wave, dir);
        const double lambda = wavelength(wave.frequency, cfg);
        const double e_sq = scattered_field_sq_single(m, wave, geom, tx, cfg, norm);
        const double p = power_from_field_aperture(e_sq, tx.rx.aperture_at(lambda));
        if (p == 0.0)
            return -std::numeric_limits<double>::infinity();
        return watt_to_dbm(p);
    }

    ScatterResult compare_scatter_vs_reflection(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                                const TxParams &tx, const PhysicsConfig &cfg, LobeNormalization norm)
    {
        ScatterResult r;
        r.reflected_dbm = reflected_received_power(m, wave, link, tx, cfg);

        const double lambda = wavelength(wave.frequency, cfg);
        const double gamma_smooth = fresnel_reflection(m.eps_r, wave);
        const double rho = scattering_loss_factor(m.h_rms, wave, cfg.loss_factor, cfg);
        r.components.push_back({"gamma_smooth_sq_db", to_db(gamma_smooth * gamma_smooth)});
        r.components.push_back({"rho_s_sq_db", to_db(rho * rho)});
        r.components.push_back({"friis_path_gain_db", to_db(friis_path_gain(tx, lambda, link.d_t + link.d_r))});

        const double scattered = scattered_received_power_ds(m, wave, link, tx, cfg, ScatterDirection::specular, norm);
        if (std::isfinite(scattered))
        {
            r.scattered_dbm = scattered;
            r.difference_db = r.reflected_dbm - scattered;
            r.components.push_back(
                {"lobe_normalization_f", f_alpha_r(m.alpha_r, wave.theta_i, norm, cfg.quadrature_rel_tol)});
        }
        return r;
    }
}
