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

#include "roughscatter/fitting.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/link_budget.hpp"
#include "roughscatter/units.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <thread>

namespace roughscatter
{
    namespace
    {
        constexpr double specular_match = 1e-6; // rad
        constexpr double power_floor = 1e-300;  // W, keeps dB finite for vanishing lobes
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        struct KernelNode
        {
            double theta_s;
            double weight;
        };

        // Quadrature nodes of a Gaussian beam centred on theta_s, clipped to the
        // visible half-space. A single node when convolution is off.
        std::vector<KernelNode> beam_kernel(double theta_s, double hpbw_deg)
        {
            if (!(hpbw_deg > 0.0))
                return {{theta_s, 1.0}};
            const double sigma = deg_to_rad(hpbw_deg) / (2.0 * std::sqrt(2.0 * std::log(2.0)));
            constexpr int half = 20;
            std::vector<KernelNode> nodes;
            double total = 0.0;
            for (int j = -half; j <= half; ++j)
            {
                const double off = 3.0 * sigma * j / half;
                const double t = theta_s + off;
                if (std::abs(t) > half_pi)
                    continue;
                const double w = std::exp(-0.5 * off * off / (sigma * sigma));
                nodes.push_back({t, w});
                total += w;
            }
            for (auto &n : nodes)
                n.weight /= total;
            return nodes;
        }

        bool is_specular(double theta_s, double theta_i)
        {
            return std::abs(theta_s - theta_i) < specular_match;
        }

        ScatterGeometry geometry(const ProfileContext &ctx, double theta_s)
        {
            ScatterGeometry g;
            g.d_t = ctx.link.d_t;
            g.d_r = ctx.link.d_r;
            g.length = ctx.link.scatterer_length;
            g.theta_s = theta_s;
            return g;
        }

        // Received power decomposed so that the fitter can vary (Lambda, alpha_R,
        // alpha_i, S) without re-running the whole model:
        //   P_k = S^2 * peak(alpha_R) * [Lambda fwd_k(alpha_R) + (1-Lambda) back_k(alpha_i)] + refl_k
        class ForwardModel
        {
        public:
            ForwardModel(const std::vector<double> &theta_s, const Material &skeleton, const IncidentWave &wave,
                         const ProfileContext &ctx)
                : skeleton_(skeleton), wave_(wave), ctx_(ctx)
            {
                const double lambda = wavelength(wave.frequency, ctx.cfg);
                rx_aperture_ = ctx.tx.rx.aperture_at(lambda);
                refl_.assign(theta_s.size(), 0.0);
                double refl_w = 0.0;
                if (ctx.predict.include_reflection)
                    refl_w = dbm_to_watt(reflected_received_power(skeleton, wave, ctx.link, ctx.tx, ctx.cfg));
                for (std::size_t k = 0; k < theta_s.size(); ++k)
                {
                    kernels_.push_back(beam_kernel(theta_s[k], ctx.predict.beam_hpbw_deg));
                    if (is_specular(theta_s[k], wave.theta_i))
                    {
                        refl_[k] = refl_w;
                        has_reflection_ = has_reflection_ || refl_w > 0.0;
                    }
                }
            }

            std::size_t size() const { return kernels_.size(); }
            bool has_reflection() const { return has_reflection_; }
            bool reflection_at(std::size_t k) const { return refl_[k] > 0.0; }

            double peak(double alpha_r)
            {
                auto it = peak_cache_.find(alpha_r);
                if (it != peak_cache_.end())
                    return it->second;
                Material m = skeleton_;
                m.s_coeff = 1.0;
                m.alpha_r = alpha_r;
                const double e0 = scattered_field_sq_peak(m, wave_, geometry(ctx_, wave_.theta_i), ctx_.tx, ctx_.cfg,
                                                          ctx_.predict.norm);
                const double p = power_from_field_aperture(e0, rx_aperture_);
                peak_cache_.emplace(alpha_r, p);
                return p;
            }

            std::vector<double> forward_lobe(double alpha) const { return lobe(alpha, false); }
            std::vector<double> back_lobe(double alpha) const { return lobe(alpha, true); }

            double predict_dbm(std::size_t k, double s, double peak_p, double lambda_mix, double fwd, double back) const
            {
                const double p = s * s * peak_p * (lambda_mix * fwd + (1.0 - lambda_mix) * back) + refl_[k];
                return watt_to_dbm(std::max(p, power_floor));
            }

        private:
            std::vector<double> lobe(double alpha, bool back) const
            {
                std::vector<double> out(kernels_.size());
                for (std::size_t k = 0; k < kernels_.size(); ++k)
                {
                    double acc = 0.0;
                    for (const auto &n : kernels_[k])
                    {
                        const auto a = scatter_angles(wave_.theta_i, n.theta_s);
                        acc += n.weight * lobe_factor(back ? a.psi_i : a.psi, alpha);
                    }
                    out[k] = acc;
                }
                return out;
            }

            Material skeleton_;
            IncidentWave wave_;
            ProfileContext ctx_;
            double rx_aperture_ = 0.0;
            std::vector<std::vector<KernelNode>> kernels_;
            std::vector<double> refl_;
            bool has_reflection_ = false;
            std::map<double, double> peak_cache_;
        };

        struct Params
        {
            double lambda_mix, ln_alpha_r, ln_alpha_i, ln_s;
        };

        struct Objective
        {
            ForwardModel &model;
            const std::vector<double> &measured;

            double operator()(const Params &x)
            {
                const double ar = std::exp(x.ln_alpha_r);
                const double ai = std::exp(x.ln_alpha_i);
                const double s = std::exp(x.ln_s);
                const double pk = model.peak(ar);
                const auto f = model.forward_lobe(ar);
                const auto b = model.back_lobe(ai);
                double rss = 0.0;
                for (std::size_t k = 0; k < measured.size(); ++k)
                {
                    const double r = model.predict_dbm(k, s, pk, x.lambda_mix, f[k], b[k]) - measured[k];
                    rss += r * r;
                }
                return rss;
            }
        };

        IncidentWave wave_for(const AngularPowerProfile &p, const ProfileContext &ctx)
        {
            if (!(p.meta.frequency > 0.0))
                throw DomainError("profile metadata lacks a frequency (frequency_ghz)");
            return {p.meta.frequency, p.theta_i, ctx.polarization};
        }

        double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }
    }

    ProfileContext apply_profile_metadata(ProfileContext ctx, const ProfileMetadata &meta)
    {
        if (meta.radius_m > 0.0)
        {
            ctx.link.d_t = meta.radius_m;
            ctx.link.d_r = meta.radius_m;
        }
        if (meta.tx_power_dbm)
            ctx.tx.p_t = dbm_to_watt(*meta.tx_power_dbm);
        if (meta.antenna_gain_dbi)
        {
            ctx.tx.tx = Antenna::fixed(from_db(*meta.antenna_gain_dbi));
            ctx.tx.rx = Antenna::fixed(from_db(*meta.antenna_gain_dbi));
        }
        if (meta.hpbw_deg > 0.0 && ctx.predict.beam_hpbw_deg > 0.0)
            ctx.predict.beam_hpbw_deg = meta.hpbw_deg;
        return ctx;
    }

    AngularPowerProfile predict_profile(const Material &m, const IncidentWave &wave, const ProfileContext &ctx,
                                        const std::vector<double> &theta_s_grid)
    {
        m.validate();
        wave.validate();
        AngularPowerProfile out;
        out.theta_i = wave.theta_i;
        out.meta.frequency = wave.frequency;
        out.meta.material_name = m.name;
        out.meta.hpbw_deg = ctx.predict.beam_hpbw_deg;
        out.meta.radius_m = ctx.link.d_t;
        out.meta.tx_power_dbm = watt_to_dbm(ctx.tx.p_t);
        const double lambda = wavelength(wave.frequency, ctx.cfg);
        if (ctx.tx.tx.mode == GainMode::fixed_gain)
            out.meta.antenna_gain_dbi = to_db(ctx.tx.tx.gain_at(lambda));

        double refl_w = 0.0;
        if (ctx.predict.include_reflection)
            refl_w = dbm_to_watt(reflected_received_power(m, wave, ctx.link, ctx.tx, ctx.cfg));
        const double aperture = ctx.tx.rx.aperture_at(lambda);

        for (double ts : theta_s_grid)
        {
            ProfileSample s{ts, nan};
            try
            {
                double p = 0.0;
                for (const auto &n : beam_kernel(ts, ctx.predict.beam_hpbw_deg))
                    p += n.weight * power_from_field_aperture(
                                        scattered_field_sq_dual(m, wave, geometry(ctx, n.theta_s), ctx.tx, ctx.cfg,
                                                                ctx.predict.norm),
                                        aperture);
                if (is_specular(ts, wave.theta_i))
                    p += refl_w;
                s.power_dbm = watt_to_dbm(std::max(p, power_floor));
            }
            catch (const SingularityError &)
            {
                // left as NaN
            }
            out.samples.push_back(s);
        }
        return out;
    }

    double profile_rss_db2(const AngularPowerProfile &profile, const Material &m, const ProfileContext &ctx)
    {
        std::vector<double> thetas, measured;
        for (const auto &s : profile.samples)
            if (std::isfinite(s.power_dbm))
            {
                thetas.push_back(s.theta_s);
                measured.push_back(s.power_dbm);
            }
        ForwardModel model(thetas, m, wave_for(profile, ctx), ctx);
        Objective obj{model, measured};
        return obj({m.lambda_mix, std::log(m.alpha_r), std::log(m.alpha_i), std::log(m.s_coeff)});
    }

    FitResult fit_dual_lobe(const AngularPowerProfile &profile, const Material &skeleton, const ProfileContext &ctx,
                            const FitBounds &bounds, const FitOptions &opt)
    {
        profile.validate();
        if (!(bounds.lambda_min >= 0.0 && bounds.lambda_max <= 1.0 && bounds.lambda_min <= bounds.lambda_max &&
              bounds.alpha_min >= 1.0 && bounds.alpha_max >= bounds.alpha_min && bounds.s_min > 0.0 &&
              bounds.s_max <= 1.0 && bounds.s_min <= bounds.s_max))
            throw DomainError("fit bounds must satisfy 0<=Lambda<=1, 1<=alpha, 0<S<=1 with min <= max");
        if (opt.lambda_steps < 2 || opt.alpha_steps < 2)
            throw DomainError("fit grid needs at least 2 nodes per axis");

        std::vector<double> thetas, measured;
        for (const auto &s : profile.samples)
            if (std::isfinite(s.power_dbm))
            {
                thetas.push_back(s.theta_s);
                measured.push_back(s.power_dbm);
            }
        if (measured.size() < 3)
            throw DomainError("fitting needs at least 3 finite samples");

        const auto wave = wave_for(profile, ctx);
        ForwardModel model(thetas, skeleton, wave, ctx);
        Objective obj{model, measured};

        FitResult res;
        res.samples_used = measured.size();
        const auto [mn, mx] = std::minmax_element(measured.begin(), measured.end());
        res.degenerate = (*mx - *mn) < 1e-9;

        // Grid search with S solved in closed form from the scattered-only samples.
        const double ln_amin = std::log(bounds.alpha_min);
        const double ln_amax = std::log(bounds.alpha_max);
        const double ln_astep = (ln_amax - ln_amin) / (opt.alpha_steps - 1);
        const double lam_step = (bounds.lambda_max - bounds.lambda_min) / (opt.lambda_steps - 1);

        std::vector<double> alphas(opt.alpha_steps), peaks(opt.alpha_steps);
        std::vector<std::vector<double>> fwd(opt.alpha_steps), back(opt.alpha_steps);
        for (int a = 0; a < opt.alpha_steps; ++a)
        {
            alphas[a] = a == opt.alpha_steps - 1 ? bounds.alpha_max : std::exp(ln_amin + a * ln_astep);
            peaks[a] = model.peak(alphas[a]);
            fwd[a] = model.forward_lobe(alphas[a]);
            back[a] = model.back_lobe(alphas[a]);
        }

        // Candidates are scored in parallel into fixed slots, then reduced in
        // index order so the winner does not depend on the thread count.
        const bool skip_refl = model.has_reflection();
        const std::size_t n_alpha = opt.alpha_steps, n_lambda = opt.lambda_steps;
        const std::size_t total = n_alpha * n_alpha * n_lambda;
        std::vector<double> cand_rss(total), cand_s(total);
        auto lambda_at = [&](std::size_t li)
        { return li == n_lambda - 1 ? bounds.lambda_max : bounds.lambda_min + li * lam_step; };
        auto score = [&](std::size_t c)
        {
            const std::size_t li = c % n_lambda, ai = (c / n_lambda) % n_alpha, ar = c / (n_lambda * n_alpha);
            const double lam = lambda_at(li);
            double sum = 0.0;
            int count = 0;
            for (std::size_t k = 0; k < measured.size(); ++k)
            {
                if (skip_refl && model.reflection_at(k))
                    continue;
                const double shape = peaks[ar] * (lam * fwd[ar][k] + (1.0 - lam) * back[ai][k]);
                sum += measured[k] - watt_to_dbm(std::max(shape, power_floor));
                ++count;
            }
            const double s = count ? clamp(std::pow(10.0, sum / count / 20.0), bounds.s_min, bounds.s_max)
                                   : bounds.s_max;
            double rss = 0.0;
            for (std::size_t k = 0; k < measured.size(); ++k)
            {
                const double r = model.predict_dbm(k, s, peaks[ar], lam, fwd[ar][k], back[ai][k]) - measured[k];
                rss += r * r;
            }
            cand_rss[c] = rss;
            cand_s[c] = s;
        };
        unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
        if (workers <= 1)
            for (std::size_t c = 0; c < total; ++c)
                score(c);
        else
        {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back([&]
                                  {
                    for (std::size_t c = next++; c < total; c = next++)
                        score(c); });
        }

        Params best{1.0, 0.0, 0.0, 0.0};
        double best_rss = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < total; ++c)
            if (cand_rss[c] < best_rss)
            {
                best_rss = cand_rss[c];
                const std::size_t li = c % n_lambda, ai = (c / n_lambda) % n_alpha, ar = c / (n_lambda * n_alpha);
                best = {lambda_at(li), std::log(alphas[ar]), std::log(alphas[ai]), std::log(cand_s[c])};
            }

        // Coordinate descent over (Lambda, ln alpha_R, ln alpha_i, ln S).
        const std::array<double, 4> lo{bounds.lambda_min, ln_amin, ln_amin, std::log(bounds.s_min)};
        const std::array<double, 4> hi{bounds.lambda_max, ln_amax, ln_amax, std::log(bounds.s_max)};
        std::array<double, 4> step{lam_step / 2, ln_astep / 2, ln_astep / 2, 0.1};
        auto get = [](Params &p, int i) -> double &
        {
            switch (i)
            {
            case 0:
                return p.lambda_mix;
            case 1:
                return p.ln_alpha_r;
            case 2:
                return p.ln_alpha_i;
            default:
                return p.ln_s;
            }
        };

        int sweeps = 0;
        while (sweeps < opt.max_sweeps && !res.degenerate)
        {
            ++sweeps;
            const double start = best_rss;
            Params base = best;
            for (int i = 0; i < 4; ++i)
            {
                for (double dir : {1.0, -1.0})
                {
                    Params trial = best;
                    double &v = get(trial, i);
                    const double nv = clamp(v + dir * step[i], lo[i], hi[i]);
                    if (nv == v)
                        continue;
                    v = nv;
                    const double r = obj(trial);
                    if (r < best_rss)
                    {
                        best_rss = r;
                        best = trial;
                        break;
                    }
                }
            }
            // Pattern move along the net displacement of this sweep; follows
            // the correlated S / alpha_R valley that axis steps zig-zag across.
            if (best_rss < start)
            {
                Params trial = best;
                for (int i = 0; i < 4; ++i)
                    get(trial, i) = clamp(2.0 * get(trial, i) - get(base, i), lo[i], hi[i]);
                const double r = obj(trial);
                if (r < best_rss)
                {
                    best_rss = r;
                    best = trial;
                }
            }
            // Steps shrink only when no move helps, so slow progress along a
            // valley is not mistaken for convergence.
            const bool fine = *std::max_element(step.begin(), step.end()) < 1e-7;
            if (best_rss == start)
            {
                if (fine)
                    break;
                for (auto &s : step)
                    s *= 0.5;
            }
            else if (fine && start - best_rss < opt.tolerance_db2)
                break;
        }

        res.lambda_mix = best.lambda_mix;
        res.alpha_r = std::exp(best.ln_alpha_r);
        res.alpha_i = std::exp(best.ln_alpha_i);
        res.s_coeff = std::exp(best.ln_s);
        res.rss_db2 = best_rss;
        res.sweeps = sweeps;

        auto sensitivity = [&](int i)
        {
            double worst = std::numeric_limits<double>::infinity();
            for (double f : {std::log(2.0), -std::log(2.0)})
            {
                Params t = best;
                double &v = get(t, i);
                const double nv = clamp(v + f, lo[i], hi[i]);
                if (nv == v)
                    continue;
                v = nv;
                worst = std::min(worst, obj(t) - best_rss);
            }
            return worst;
        };
        res.alpha_r_identifiable = !res.degenerate && res.lambda_mix >= 0.03 && sensitivity(1) >= opt.identifiability_db2;
        res.alpha_i_identifiable =
            !res.degenerate && res.lambda_mix <= 0.97 && sensitivity(2) >= opt.identifiability_db2;

        res.peak_error_db = nan;
        {
            const double pk = model.peak(res.alpha_r);
            const auto f = model.forward_lobe(res.alpha_r);
            const auto b = model.back_lobe(res.alpha_i);
            double best_dist = deg_to_rad(0.25);
            for (std::size_t k = 0; k < thetas.size(); ++k)
            {
                const double d = std::abs(thetas[k] - wave.theta_i);
                if (d <= best_dist)
                {
                    best_dist = d;
                    res.peak_error_db =
                        std::abs(model.predict_dbm(k, res.s_coeff, pk, res.lambda_mix, f[k], b[k]) - measured[k]);
                }
            }
        }
        return res;
    }

    AngularPowerProfile add_gaussian_noise(const AngularPowerProfile &p, double sigma_db, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, sigma_db);
        AngularPowerProfile out = p;
        for (auto &s : out.samples)
            s.power_dbm += noise(rng);
        return out;
    }
}
