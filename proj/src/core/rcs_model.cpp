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

#include "roughscatter/rcs_model.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace roughscatter
{
    namespace
    {
        // Patches tilted to within this angle of edge-on are treated as
        // shadowed and dropped from the slope average.
        constexpr double shadow_margin = 1e-6;
        constexpr double slope_window = 6.0; // +- sigma_l multiples
        constexpr unsigned inner_depth = 14;
        constexpr unsigned outer_depth = 12;

        double cos_incidence(double theta_i)
        {
            return theta_i >= half_pi ? 0.0 : std::cos(theta_i);
        }

        double normal_cdf(double x)
        {
            return 0.5 * std::erfc(-x / std::sqrt(2.0));
        }

        struct PatchKernel
        {
            double k0, v_x, v_y, a, l_c, l_p;

            // (1 - |x|/L_p) [chi2 - |chi|^2], with the Gaussian forms
            // |chi|^2 = exp(-a), chi2 = |chi|^2 exp(a exp(-x^2/l_c^2)), a = v_y^2 h_rms^2
            double envelope(double x) const
            {
                const double r = std::exp(-(x * x) / (l_c * l_c));
                return (1.0 - std::abs(x) / l_p) * std::exp(-a) * std::expm1(a * r);
            }

            double prefactor(double h_x) const
            {
                return k0 * k0 * k0 * (1.0 + h_x * h_x) / (v_y * v_y);
            }

            // Breakpoints on [0, L_p] resolving the correlation peak at x = 0.
            std::vector<double> breaks() const
            {
                const double core = l_c / std::sqrt(std::max(1.0, a));
                std::vector<double> b{0.0, l_p};
                for (double m : {0.5, 1.0, 2.0, 4.0})
                {
                    if (core * m < l_p)
                        b.push_back(core * m);
                    if (l_c * m < l_p)
                        b.push_back(l_c * m);
                }
                std::sort(b.begin(), b.end());
                b.erase(std::unique(b.begin(), b.end()), b.end());
                return b;
            }
        };

        PatchKernel make_kernel(const RcsSurfaceParams &s, const IncidentWave &wave, double h_x,
                                const PhysicsConfig &cfg)
        {
            const double lambda = wavelength(wave.frequency, cfg);
            const double k0 = 2.0 * pi / lambda;
            const double local = wave.theta_i - std::atan(h_x);
            PatchKernel k{k0, 2.0 * k0 * std::sin(local), 2.0 * k0 * std::cos(local), 0.0, s.l_c,
                          s.patch_half_length};
            k.a = k.v_y * k.v_y * s.h_rms * s.h_rms;
            return k;
        }

        double q_from_kernel(const PatchKernel &k, double h_x, double rel_tol)
        {
            if (k.a == 0.0)
                return 0.0;
            const auto breaks = k.breaks();
            auto f = [&](double x)
            { return k.envelope(x) * std::cos(k.v_x * x); };
            const double half = integrate_pieces(f, breaks, rel_tol, inner_depth).value;
            return k.prefactor(h_x) * 2.0 * half;
        }
    }

    void LinkGeometry::validate() const
    {
        if (!(d_t > 0.0) || !(d_r > 0.0) || !std::isfinite(d_t) || !std::isfinite(d_r))
            throw DomainError("link distances must be > 0");
        if (!(scatterer_length > 0.0) || !(scatterer_width > 0.0))
            throw DomainError("scatterer dimensions must be > 0");
        if (monostatic && d_t != d_r)
            throw DomainError("monostatic link requires d_t == d_r");
    }

    std::string_view to_string(RcsPolarization p)
    {
        return p == RcsPolarization::VV ? "VV" : "HH";
    }

    RcsPolarization parse_rcs_polarization(std::string_view s)
    {
        if (s == "VV" || s == "vv")
            return RcsPolarization::VV;
        if (s == "HH" || s == "hh")
            return RcsPolarization::HH;
        throw ConfigError("unknown RCS polarization '" + std::string(s) + "' (expected VV|HH)");
    }

    void RcsSurfaceParams::validate() const
    {
        if (!(width > 0.0) || !std::isfinite(width))
            throw DomainError("RCS plate width must be > 0");
        if (!(h_rms >= 0.0) || !std::isfinite(h_rms))
            throw DomainError("h_rms must be >= 0");
        if (!(l_c > 0.0) || !std::isfinite(l_c))
            throw DomainError("correlation length must be > 0");
        if (!(slope_sigma > 0.0) || !std::isfinite(slope_sigma))
            throw DomainError("patch slope sigma must be > 0");
        if (!(patch_half_length > 0.0) || !std::isfinite(patch_half_length))
            throw DomainError("patch half length must be > 0");
    }

    RcsSurfaceParams RcsSurfaceParams::from_material(const Material &m, double width, const RcsOptions &opt)
    {
        RcsSurfaceParams s;
        s.width = width;
        s.h_rms = m.h_rms;
        s.l_c = m.l_c;
        s.slope_sigma = opt.slope_sigma.value_or(default_slope_sigma);
        s.patch_half_length = opt.patch_half_length.value_or(opt.patch_length_factor * m.l_c);
        s.polarization = opt.polarization;
        return s;
    }

    double sigma_smooth(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        s.validate();
        wave.validate();
        const double lambda = wavelength(wave.frequency, cfg);
        const double c = cos_incidence(wave.theta_i);
        const double x = 2.0 * pi / lambda * s.width * c;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        const double amp = c * sinc;
        return 2.0 * pi * s.width * s.width / lambda * amp * amp;
    }

    double sigma_smooth_envelope(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        s.validate();
        wave.validate();
        const double lambda = wavelength(wave.frequency, cfg);
        const double c = cos_incidence(wave.theta_i);
        const double x = 2.0 * pi / lambda * s.width * c;
        const double bound = x <= 1.0 ? 1.0 : 1.0 / x;
        const double amp = c * bound;
        return 2.0 * pi * s.width * s.width / lambda * amp * amp;
    }

    double chi_s(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        wave.validate();
        if (!(s.h_rms >= 0.0))
            throw DomainError("h_rms must be >= 0");
        const double k0 = 2.0 * pi / wavelength(wave.frequency, cfg);
        const double c = cos_incidence(wave.theta_i);
        return std::exp(-k0 * k0 * s.h_rms * s.h_rms * c * c);
    }

    double s_pp_monostatic(double theta_i, double omega, RcsPolarization pol)
    {
        const double d = theta_i - omega;
        if (pol == RcsPolarization::VV)
        {
            const double sn = std::sin(d);
            return 2.0 * (1.0 + sn * sn);
        }
        const double cs = std::cos(d);
        return 2.0 * cs * cs;
    }

    double q_monostatic(const RcsSurfaceParams &s, const IncidentWave &wave, double h_x, const PhysicsConfig &cfg)
    {
        s.validate();
        wave.validate();
        if (!std::isfinite(h_x))
            throw DomainError("patch slope h_x must be finite");
        const auto k = make_kernel(s, wave, h_x, cfg);
        if (std::abs(k.v_y) <= 1e-12 * k.k0)
            throw SingularityError("Q kernel singular: v_y = 0 (theta_i - Omega = 90 deg)");
        return q_from_kernel(k, h_x, cfg.quadrature_rel_tol);
    }

    std::complex<double> q_monostatic_complex(const RcsSurfaceParams &s, const IncidentWave &wave, double h_x,
                                              const PhysicsConfig &cfg)
    {
        s.validate();
        wave.validate();
        const auto k = make_kernel(s, wave, h_x, cfg);
        if (std::abs(k.v_y) <= 1e-12 * k.k0)
            throw SingularityError("Q kernel singular: v_y = 0 (theta_i - Omega = 90 deg)");
        if (k.a == 0.0)
            return {0.0, 0.0};

        // Same breakpoints mirrored onto [-L_p, 0].
        auto half = k.breaks();
        std::vector<double> breaks;
        for (auto it = half.rbegin(); it != half.rend(); ++it)
            breaks.push_back(-*it);
        breaks.insert(breaks.end(), half.begin() + 1, half.end());

        auto re = [&](double x)
        { return k.envelope(x) * std::cos(k.v_x * x); };
        auto im = [&](double x)
        { return -k.envelope(x) * std::sin(k.v_x * x); };
        const double tol = cfg.quadrature_rel_tol;
        const double r = integrate_pieces(re, breaks, tol, inner_depth).value;
        const double i = integrate_pieces(im, breaks, tol, inner_depth).value;
        const double pre = k.prefactor(h_x);
        return {pre * r, pre * i};
    }

    SigmaRoughResult sigma_rough_detail(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg)
    {
        s.validate();
        wave.validate();

        SigmaRoughResult out;
        if (s.h_rms == 0.0)
            return out;

        const double sl = s.slope_sigma;
        const double theta = wave.theta_i;

        // Patch orientations with |theta_i - Omega| >= 90 deg - margin face away.
        double lo = -slope_window * sl;
        double hi = slope_window * sl;
        const double lo_edge = std::tan(theta - half_pi + shadow_margin);
        const double hi_edge = theta + half_pi - shadow_margin < half_pi
                                   ? std::tan(theta + half_pi - shadow_margin)
                                   : hi;
        if (lo_edge > lo)
        {
            out.excluded_slope_mass += normal_cdf(std::min(lo_edge, hi) / sl) - normal_cdf(lo / sl);
            lo = lo_edge;
        }
        if (hi_edge < hi)
        {
            out.excluded_slope_mass += normal_cdf(hi / sl) - normal_cdf(std::max(hi_edge, lo) / sl);
            hi = hi_edge;
        }
        if (!(hi > lo))
            return out;

        std::vector<double> breaks{lo, hi};
        for (double m : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0})
            breaks.push_back(m * sl);
        breaks.push_back(std::tan(std::min(theta, half_pi - shadow_margin))); // locally normal patch
        std::erase_if(breaks, [&](double b)
                      { return b < lo || b > hi; });
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        const double norm = 1.0 / (std::sqrt(2.0 * pi) * sl);
        const double tol = cfg.quadrature_rel_tol;
        auto integrand = [&](double h_x)
        {
            const auto k = make_kernel(s, wave, h_x, cfg);
            if (std::abs(k.v_y) <= 1e-12 * k.k0)
                return 0.0;
            const double spp = s_pp_monostatic(theta, std::atan(h_x), s.polarization);
            const double pdf = norm * std::exp(-0.5 * (h_x / sl) * (h_x / sl));
            return spp * spp * q_from_kernel(k, h_x, tol) * pdf;
        };
        out.value = std::max(0.0, integrate_pieces(integrand, breaks, tol, outer_depth).value);
        return out;
    }

    RcsBreakdown rcs_total(const RcsSurfaceParams &s, const IncidentWave &wave, const PhysicsConfig &cfg,
                           bool envelope)
    {
        RcsBreakdown b;
        b.sigma_smooth = envelope ? sigma_smooth_envelope(s, wave, cfg) : sigma_smooth(s, wave, cfg);
        b.chi_s = chi_s(s, wave, cfg);
        const auto rough = sigma_rough_detail(s, wave, cfg);
        b.sigma_rough = rough.value;
        b.excluded_slope_mass = rough.excluded_slope_mass;
        b.sigma_total = b.sigma_rough + b.chi_s * b.chi_s * b.sigma_smooth;
        return b;
    }

    double rcs_received_power_dbm(double p_t_dbm, double g_t_dbi, double g_r_dbi, double lambda,
                                  double sigma_db, double d)
    {
        if (!(d > 0.0) || !std::isfinite(d))
            throw DomainError("RCS link distance must be > 0");
        if (!(lambda > 0.0))
            throw DomainError("wavelength must be > 0");
        return p_t_dbm + g_t_dbi + g_r_dbi + 20.0 * std::log10(lambda) + sigma_db -
               30.0 * std::log10(4.0 * pi) - 40.0 * std::log10(d);
    }

    double rcs_received_power(double sigma, const LinkGeometry &link, const TxParams &tx, const IncidentWave &wave,
                              const PhysicsConfig &cfg)
    {
        link.validate();
        tx.validate();
        const double lambda = wavelength(wave.frequency, cfg);
        return rcs_received_power_dbm(watt_to_dbm(tx.p_t), to_db(tx.tx.gain_at(lambda)), to_db(tx.rx.gain_at(lambda)),
                                      lambda, to_db(sigma), link.d_t);
    }
}
