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

#include <cmath>
#include <string>

namespace roughscatter
{
    namespace
    {
        void require(bool ok, const std::string &what)
        {
            if (!ok)
                throw DomainError(what);
        }

        // cos(theta_i), exactly zero at (or past) grazing so that the closed
        // forms hit their analytic limits instead of 6e-17 residues.
        double cos_incidence(double theta_i)
        {
            return theta_i >= half_pi ? 0.0 : std::cos(theta_i);
        }

        constexpr double series_limit = 30.0;
    }

    std::string_view to_string(Polarization p)
    {
        return p == Polarization::perpendicular ? "perp" : "par";
    }

    std::string_view to_string(LossFactorVariant v)
    {
        switch (v)
        {
        case LossFactorVariant::ament:
            return "ament";
        case LossFactorVariant::boithias:
            return "boithias";
        case LossFactorVariant::boithias_squared:
            return "boithias_squared";
        }
        return "?";
    }

    std::string_view to_string(SurfaceClass c)
    {
        return c == SurfaceClass::smooth ? "smooth" : "rough";
    }

    Polarization parse_polarization(std::string_view s)
    {
        if (s == "perp" || s == "perpendicular" || s == "te" || s == "TE")
            return Polarization::perpendicular;
        if (s == "par" || s == "parallel" || s == "tm" || s == "TM")
            return Polarization::parallel;
        throw ConfigError("unknown polarization '" + std::string(s) + "' (expected perp|par)");
    }

    LossFactorVariant parse_loss_factor_variant(std::string_view s)
    {
        if (s == "ament")
            return LossFactorVariant::ament;
        if (s == "boithias")
            return LossFactorVariant::boithias;
        if (s == "boithias_squared")
            return LossFactorVariant::boithias_squared;
        throw ConfigError("unknown loss factor variant '" + std::string(s) +
                          "' (expected ament|boithias|boithias_squared)");
    }

    void Material::validate() const
    {
        const std::string tag = "material '" + name + "': ";
        require(std::isfinite(eps_r) && eps_r >= 1.0, tag + "eps_r must be >= 1");
        require(std::isfinite(h_rms) && h_rms >= 0.0, tag + "h_rms must be >= 0");
        require(std::isfinite(l_c) && l_c > 0.0, tag + "l_c must be > 0");
        require(std::isfinite(s_coeff) && s_coeff > 0.0 && s_coeff <= 1.0, tag + "s_coeff must be in (0, 1]");
        require(std::isfinite(alpha_r) && alpha_r >= 1.0, tag + "alpha_r must be >= 1");
        require(std::isfinite(alpha_i) && alpha_i >= 1.0, tag + "alpha_i must be >= 1");
        require(std::isfinite(lambda_mix) && lambda_mix >= 0.0 && lambda_mix <= 1.0,
                tag + "lambda_mix must be in [0, 1]");
    }

    void IncidentWave::validate() const
    {
        require(std::isfinite(frequency) && frequency > 0.0, "frequency must be > 0");
        require(std::isfinite(theta_i) && theta_i >= 0.0 && theta_i <= half_pi,
                "theta_i must be in [0, 90] degrees");
    }

    void PhysicsConfig::validate() const
    {
        require(std::isfinite(speed_of_light) && speed_of_light > 0.0, "speed_of_light must be > 0");
        require(std::isfinite(quadrature_rel_tol) && quadrature_rel_tol > 0.0,
                "quadrature_rel_tol must be > 0");
    }

    PhysicsConfig PhysicsConfig::paper_repro()
    {
        PhysicsConfig cfg;
        cfg.speed_of_light = 3.0e8;
        return cfg;
    }

    Material table1_smooth()
    {
        return {"Material 1 - Smooth", 16.0, um_to_m(10.0), um_to_m(1000.0), 0.05, 1.0, 1.0, 1.0};
    }

    Material table1_intermediate()
    {
        return {"Material 2 - Intermediate", 4.0, um_to_m(100.0), um_to_m(500.0), 0.3, 1.0, 1.0, 1.0};
    }

    Material table1_rough()
    {
        return {"Material 3 - Rough", 2.0, um_to_m(300.0), um_to_m(300.0), 0.5, 1.0, 1.0, 1.0};
    }

    double wavelength(double frequency, const PhysicsConfig &cfg)
    {
        require(std::isfinite(frequency) && frequency > 0.0, "frequency must be > 0");
        return cfg.speed_of_light / frequency;
    }

    double critical_height(const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        wave.validate();
        const double c = cos_incidence(wave.theta_i);
        if (c <= 0.0)
            throw SingularityError("critical height is unbounded at grazing incidence (cos theta_i = 0)");
        return wavelength(wave.frequency, cfg) / (8.0 * c);
    }

    SurfaceClass classify_surface(double h0, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        require(std::isfinite(h0) && h0 >= 0.0, "surface height h0 must be >= 0");
        return h0 < critical_height(wave, cfg) ? SurfaceClass::smooth : SurfaceClass::rough;
    }

    double fresnel_reflection(double eps_r, const IncidentWave &wave)
    {
        require(std::isfinite(eps_r) && eps_r >= 1.0, "eps_r must be >= 1");
        require(std::isfinite(wave.theta_i) && wave.theta_i >= 0.0 && wave.theta_i <= half_pi,
                "theta_i must be in [0, 90] degrees");

        const double c = cos_incidence(wave.theta_i);
        if (c == 0.0)
            return wave.polarization == Polarization::perpendicular ? -1.0 : 1.0;

        const double s = std::sin(wave.theta_i);
        const double root = std::sqrt(eps_r - s * s);
        if (wave.polarization == Polarization::perpendicular)
            return (c - root) / (c + root);
        return (-eps_r * c + root) / (eps_r * c + root);
    }

    double bessel_i0_scaled(double x)
    {
        require(!std::isnan(x) && x >= 0.0, "bessel_i0 argument must be >= 0");
        if (std::isinf(x))
            return 0.0;

        if (x <= series_limit)
        {
            // sum (x/2)^(2k) / (k!)^2, all terms positive
            const double q = 0.25 * x * x;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return std::exp(-x) * sum;
        }

        // Hankel asymptotic expansion, a_k = a_{k-1} (2k-1)^2 / (8k x)
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k)
        {
            const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
            if (next >= term)
                break;
            term = next;
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum / std::sqrt(2.0 * pi * x);
    }

    double bessel_i0(double x)
    {
        require(!std::isnan(x) && x >= 0.0, "bessel_i0 argument must be >= 0");
        if (x <= series_limit)
        {
            const double q = 0.25 * x * x;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return sum;
        }
        // overflows to +inf past x ~ 713, as the true value does in double
        return std::exp(x) * bessel_i0_scaled(x);
    }

    LossFactor scattering_loss_factor_detail(double h_rms, const IncidentWave &wave,
                                             LossFactorVariant variant, const PhysicsConfig &cfg)
    {
        require(std::isfinite(h_rms) && h_rms >= 0.0, "h_rms must be >= 0");
        wave.validate();

        const double lambda = wavelength(wave.frequency, cfg);
        const double u = pi * h_rms * cos_incidence(wave.theta_i) / lambda;
        const double g = 8.0 * u * u;

        LossFactor out;
        switch (variant)
        {
        case LossFactorVariant::ament:
            out.raw = std::exp(-g);
            break;
        case LossFactorVariant::boithias:
            // exp(-8u^2) I0(8u) = exp(-8u^2 + 8u) * [exp(-8u) I0(8u)]
            out.raw = std::exp(-g + 8.0 * u) * bessel_i0_scaled(8.0 * u);
            break;
        case LossFactorVariant::boithias_squared:
            out.raw = bessel_i0_scaled(g);
            break;
        }
        out.rho = out.raw;
        if (out.rho > 1.0)
        {
            out.rho = 1.0;
            out.clamped = true;
        }
        return out;
    }

    double rough_reflection_coefficient(const Material &m, const IncidentWave &wave,
                                        const PhysicsConfig &cfg)
    {
        m.validate();
        return scattering_loss_factor(m.h_rms, wave, cfg.loss_factor, cfg) *
               fresnel_reflection(m.eps_r, wave);
    }
}
