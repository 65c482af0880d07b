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
#include "roughscatter/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace roughscatter
{
    std::string_view to_string(LobeNormalization n)
    {
        return n == LobeNormalization::literal ? "literal" : "hemisphere";
    }

    LobeNormalization parse_lobe_normalization(std::string_view s)
    {
        if (s == "literal")
            return LobeNormalization::literal;
        if (s == "hemisphere")
            return LobeNormalization::hemisphere;
        throw ConfigError("unknown lobe normalization '" + std::string(s) + "' (expected literal|hemisphere)");
    }

    ScatterAngles scatter_angles(double theta_i, double theta_s)
    {
        return {theta_s - theta_i, theta_s + theta_i};
    }

    void ScatterGeometry::validate() const
    {
        if (!(d_t > 0.0) || !(d_r > 0.0) || !std::isfinite(d_t) || !std::isfinite(d_r))
            throw DomainError("scatter geometry distances must be > 0");
        if (!(length > 0.0) || !std::isfinite(length))
            throw DomainError("scatterer length must be > 0");
        if (!(std::abs(theta_s) <= half_pi))
            throw DomainError("theta_s must be in [-90, 90] degrees");
    }

    ScatterGeometry ScatterGeometry::specular(double d_t, double d_r, double length, double theta_i)
    {
        return {d_t, d_r, length, theta_i};
    }

    ScatterGeometry ScatterGeometry::backscatter(double d, double length, double theta_i)
    {
        return {d, d, length, -theta_i};
    }

    double Antenna::gain_at(double lambda) const
    {
        if (mode == GainMode::fixed_gain)
            return gain;
        return 4.0 * pi * aperture / (lambda * lambda);
    }

    double Antenna::aperture_at(double lambda) const
    {
        if (mode == GainMode::constant_aperture)
            return aperture;
        return gain * lambda * lambda / (4.0 * pi);
    }

    void Antenna::validate() const
    {
        if (mode == GainMode::fixed_gain && !(gain > 0.0 && std::isfinite(gain)))
            throw DomainError("antenna gain must be > 0");
        if (mode == GainMode::constant_aperture && !(aperture > 0.0 && std::isfinite(aperture)))
            throw DomainError("antenna aperture must be > 0");
    }

    Antenna Antenna::fixed(double gain_linear)
    {
        return {GainMode::fixed_gain, gain_linear, 0.0};
    }

    Antenna Antenna::with_aperture(double aperture_m2)
    {
        return {GainMode::constant_aperture, 1.0, aperture_m2};
    }

    void TxParams::validate() const
    {
        if (!(p_t > 0.0 && std::isfinite(p_t)))
            throw DomainError("transmit power must be > 0");
        tx.validate();
        rx.validate();
    }

    double TxParams::k_factor(double lambda) const
    {
        return std::sqrt(60.0 * p_t * tx.gain_at(lambda));
    }

    double lobe_factor(double psi, double alpha)
    {
        const double base = 0.5 * (1.0 + std::cos(psi));
        return std::pow(std::max(base, 0.0), alpha);
    }

    double f_alpha_r(double alpha, double theta_i, LobeNormalization variant, double rel_tol)
    {
        if (!(alpha >= 1.0) || !std::isfinite(alpha))
            throw DomainError("lobe exponent alpha must be >= 1");
        if (!(theta_i >= 0.0 && theta_i <= half_pi))
            throw DomainError("theta_i must be in [0, 90] degrees");

        if (variant == LobeNormalization::hemisphere)
        {
            // u = (1 + cos psi) / 2 maps [0, pi/2] onto [1, 1/2]; sin psi dpsi = -2 du
            return 2.0 * (1.0 - std::pow(0.5, alpha + 1.0)) / (alpha + 1.0);
        }

        if (theta_i < literal_angular_floor)
            throw SingularityError("literal lobe normalization vanishes at normal incidence; theta_i below 0.5 deg");

        // Breakpoints around the lobe peak so narrow lobes (large alpha) are resolved.
        const double width = std::min(2.0 / std::sqrt(alpha), 1.0);
        std::vector<double> breaks{-half_pi, 0.0, half_pi};
        for (double k : {-3.0, -1.0, 0.0, 1.0, 3.0})
        {
            const double x = theta_i + k * width;
            if (x > -half_pi && x < half_pi)
                breaks.push_back(x);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        auto integrand = [&](double ts)
        { return lobe_factor(ts - theta_i, alpha) * std::sin(ts); };
        const double f = integrate_pieces(integrand, breaks, rel_tol).value;
        if (!(f > 0.0))
            throw SingularityError("lobe normalization F_alpha is not positive");
        return f;
    }

    double scattered_field_sq_peak(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                   const TxParams &tx, const PhysicsConfig &cfg, LobeNormalization norm)
    {
        m.validate();
        wave.validate();
        geom.validate();
        tx.validate();

        const double lambda = wavelength(wave.frequency, cfg);
        const double cos_i = wave.theta_i >= half_pi ? 0.0 : std::cos(wave.theta_i);
        const double f = f_alpha_r(m.alpha_r, wave.theta_i, norm, cfg.quadrature_rel_tol);
        const double amp = m.s_coeff * tx.k_factor(lambda) / (geom.d_t * geom.d_r);
        return amp * amp * geom.length * cos_i / f;
    }

    double scattered_field_sq_single(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                     const TxParams &tx, const PhysicsConfig &cfg, LobeNormalization norm)
    {
        const double peak = scattered_field_sq_peak(m, wave, geom, tx, cfg, norm);
        const auto ang = scatter_angles(wave.theta_i, geom.theta_s);
        return peak * lobe_factor(ang.psi, m.alpha_r);
    }

    double scattered_field_sq_dual(const Material &m, const IncidentWave &wave, const ScatterGeometry &geom,
                                   const TxParams &tx, const PhysicsConfig &cfg, LobeNormalization norm)
    {
        const double peak = scattered_field_sq_peak(m, wave, geom, tx, cfg, norm);
        const auto ang = scatter_angles(wave.theta_i, geom.theta_s);
        const double mix = m.lambda_mix * lobe_factor(ang.psi, m.alpha_r) +
                           (1.0 - m.lambda_mix) * lobe_factor(ang.psi_i, m.alpha_i);
        return peak * mix;
    }

    double power_from_field(double e_sq, double gain_r, double lambda)
    {
        if (!(e_sq >= 0.0))
            throw DomainError("field power density |E|^2 must be >= 0");
        return e_sq * gain_r * lambda * lambda / (480.0 * pi * pi);
    }

    double power_from_field_aperture(double e_sq, double aperture)
    {
        if (!(e_sq >= 0.0))
            throw DomainError("field power density |E|^2 must be >= 0");
        return e_sq / (120.0 * pi) * aperture;
    }
}
