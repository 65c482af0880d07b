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

#include "roughscatter/roughscatter.h"

#include "roughscatter/config.hpp"
#include "roughscatter/csv.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/fitting.hpp"
#include "roughscatter/link_budget.hpp"
#include "roughscatter/rcs_model.hpp"
#include "roughscatter/sweep.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <variant>

using namespace roughscatter;

struct rs_scenario
{
    std::string path;
    Overrides overrides;
    Scenario sc;
};

struct rs_table
{
    SweepSpec spec;
    std::variant<SweepTable, Table2> data;
};

struct rs_profile
{
    AngularPowerProfile p;
};

namespace
{
    thread_local std::string last_error;
    constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

    struct ArgumentError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    template <class F>
    rs_status guarded(F &&f) noexcept
    {
        try
        {
            f();
            last_error.clear();
            return RS_OK;
        }
        catch (const ArgumentError &e)
        {
            last_error = e.what();
            return RS_ERR_ARGUMENT;
        }
        catch (const ParseError &e)
        {
            last_error = e.what();
            return RS_ERR_PARSE;
        }
        catch (const SingularityError &e)
        {
            last_error = e.what();
            return RS_ERR_SINGULAR;
        }
        catch (const DomainError &e)
        {
            last_error = e.what();
            return RS_ERR_DOMAIN;
        }
        catch (const ConfigError &e)
        {
            last_error = e.what();
            return RS_ERR_CONFIG;
        }
        catch (const IoError &e)
        {
            last_error = e.what();
            return RS_ERR_IO;
        }
        catch (const std::exception &e)
        {
            last_error = e.what();
            return RS_ERR_INTERNAL;
        }
        catch (...)
        {
            last_error = "unknown exception";
            return RS_ERR_INTERNAL;
        }
    }

    template <class T>
    T &need(T *p, const char *what)
    {
        if (!p)
            throw ArgumentError(std::string(what) + " is NULL");
        return *p;
    }

    template <class T>
    const T &need(const T *p, const char *what)
    {
        if (!p)
            throw ArgumentError(std::string(what) + " is NULL");
        return *p;
    }

    std::string str(const char *p, const char *what)
    {
        if (!p)
            throw ArgumentError(std::string(what) + " is NULL");
        return p;
    }

    void copy_name(char (&dst)[RS_NAME_MAX], const std::string &src)
    {
        const auto n = std::min(src.size(), static_cast<std::size_t>(RS_NAME_MAX - 1));
        std::memcpy(dst, src.data(), n);
        dst[n] = '\0';
    }

    Polarization to_pol(int v)
    {
        switch (v)
        {
        case RS_POL_PERPENDICULAR:
            return Polarization::perpendicular;
        case RS_POL_PARALLEL:
            return Polarization::parallel;
        }
        throw ArgumentError("invalid polarization value " + std::to_string(v));
    }

    LossFactorVariant to_loss(int v)
    {
        switch (v)
        {
        case RS_LOSS_AMENT:
            return LossFactorVariant::ament;
        case RS_LOSS_BOITHIAS:
            return LossFactorVariant::boithias;
        case RS_LOSS_BOITHIAS_SQUARED:
            return LossFactorVariant::boithias_squared;
        }
        throw ArgumentError("invalid loss factor value " + std::to_string(v));
    }

    int from_loss(LossFactorVariant v)
    {
        switch (v)
        {
        case LossFactorVariant::ament:
            return RS_LOSS_AMENT;
        case LossFactorVariant::boithias:
            return RS_LOSS_BOITHIAS;
        case LossFactorVariant::boithias_squared:
            return RS_LOSS_BOITHIAS_SQUARED;
        }
        return RS_LOSS_AMENT;
    }

    LobeNormalization to_norm(int v)
    {
        if (v == RS_LOBE_LITERAL)
            return LobeNormalization::literal;
        if (v == RS_LOBE_HEMISPHERE)
            return LobeNormalization::hemisphere;
        throw ArgumentError("invalid lobe normalization value " + std::to_string(v));
    }

    int from_model(SweepModel m)
    {
        switch (m)
        {
        case SweepModel::ds_backscatter:
            return RS_MODEL_DS_BACKSCATTER;
        case SweepModel::rcs_monostatic:
            return RS_MODEL_RCS_MONOSTATIC;
        case SweepModel::reflection:
            return RS_MODEL_REFLECTION;
        case SweepModel::ds_specular:
            return RS_MODEL_DS_SPECULAR;
        }
        return RS_MODEL_REFLECTION;
    }

    PhysicsConfig to_cfg(const rs_physics *p)
    {
        if (!p)
            return PhysicsConfig{};
        PhysicsConfig c;
        c.speed_of_light = p->speed_of_light;
        c.loss_factor = to_loss(p->loss_factor);
        c.quadrature_rel_tol = p->quadrature_rel_tol;
        c.validate();
        return c;
    }

    void from_cfg(const PhysicsConfig &c, rs_physics *out)
    {
        out->speed_of_light = c.speed_of_light;
        out->loss_factor = from_loss(c.loss_factor);
        out->quadrature_rel_tol = c.quadrature_rel_tol;
    }

    IncidentWave to_wave(const rs_wave *w)
    {
        const auto &x = need(w, "wave");
        IncidentWave out{x.frequency_hz, x.theta_i, to_pol(x.polarization)};
        out.validate();
        return out;
    }

    Material to_material(const rs_material *m)
    {
        const auto &x = need(m, "material");
        Material out;
        out.name = std::string(x.name, strnlen(x.name, RS_NAME_MAX));
        out.eps_r = x.eps_r;
        out.h_rms = x.h_rms_m;
        out.l_c = x.l_c_m;
        out.s_coeff = x.s_coeff;
        out.alpha_r = x.alpha_r;
        out.alpha_i = x.alpha_i;
        out.lambda_mix = x.lambda_mix;
        out.validate();
        return out;
    }

    void from_material(const Material &m, rs_material *out)
    {
        copy_name(out->name, m.name);
        out->eps_r = m.eps_r;
        out->h_rms_m = m.h_rms;
        out->l_c_m = m.l_c;
        out->s_coeff = m.s_coeff;
        out->alpha_r = m.alpha_r;
        out->alpha_i = m.alpha_i;
        out->lambda_mix = m.lambda_mix;
    }

    IncidentWave scenario_wave(const rs_scenario &sc, double f, double theta)
    {
        IncidentWave w{f, theta, sc.sc.sweep.polarization};
        w.validate();
        return w;
    }

    void copy_out(const std::string &s, char *buf, std::size_t cap, std::size_t *needed)
    {
        if (needed)
            *needed = s.size() + 1;
        if (!buf && cap == 0)
            return;
        if (!buf)
            throw ArgumentError("buffer is NULL");
        if (cap < s.size() + 1)
        {
            if (cap > 0)
                buf[0] = '\0';
            throw std::length_error("buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
        }
        std::memcpy(buf, s.data(), s.size());
        buf[s.size()] = '\0';
    }

    rs_status copy_out_status(const std::string &s, char *buf, std::size_t cap, std::size_t *needed)
    {
        try
        {
            copy_out(s, buf, cap, needed);
            last_error.clear();
            return RS_OK;
        }
        catch (const std::length_error &e)
        {
            last_error = e.what();
            return RS_ERR_BUFFER;
        }
        catch (const ArgumentError &e)
        {
            last_error = e.what();
            return RS_ERR_ARGUMENT;
        }
    }

    ProfileContext profile_context(const rs_scenario &sc)
    {
        const auto &spec = sc.sc.sweep;
        ProfileContext ctx;
        ctx.link = spec.link;
        ctx.tx = spec.tx;
        ctx.cfg = spec.cfg;
        ctx.polarization = spec.polarization;
        ctx.predict.norm = spec.lobe_normalization;
        ctx.predict.include_reflection = true;
        ctx.predict.beam_hpbw_deg = sc.sc.profile.beam_convolution ? sc.sc.profile.hpbw_deg : 0.0;
        return ctx;
    }
}

extern "C" {

const char *rs_version(void)
{
    return "0.1.0";
}

const char *rs_last_error(void)
{
    return last_error.c_str();
}

const char *rs_status_name(rs_status status)
{
    switch (status)
    {
    case RS_OK:
        return "ok";
    case RS_ERR_DOMAIN:
        return "domain";
    case RS_ERR_SINGULAR:
        return "singularity";
    case RS_ERR_CONFIG:
        return "config";
    case RS_ERR_PARSE:
        return "parse";
    case RS_ERR_IO:
        return "io";
    case RS_ERR_ARGUMENT:
        return "argument";
    case RS_ERR_BUFFER:
        return "buffer";
    case RS_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

void rs_physics_default(rs_physics *out)
{
    if (out)
        from_cfg(PhysicsConfig{}, out);
}

void rs_physics_paper_repro(rs_physics *out)
{
    if (out)
        from_cfg(PhysicsConfig::paper_repro(), out);
}

rs_status rs_material_preset(int index, rs_material *out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        switch (index)
        {
        case 0:
            from_material(table1_smooth(), &o);
            break;
        case 1:
            from_material(table1_intermediate(), &o);
            break;
        case 2:
            from_material(table1_rough(), &o);
            break;
        default:
            throw ArgumentError("material preset index must be 0, 1 or 2");
        } });
}

rs_status rs_wavelength(double frequency_hz, const rs_physics *phys, double *out_m)
{
    return guarded([&]
                   { need(out_m, "out") = wavelength(frequency_hz, to_cfg(phys)); });
}

rs_status rs_critical_height(const rs_wave *wave, const rs_physics *phys, double *out_m)
{
    return guarded([&]
                   { need(out_m, "out") = critical_height(to_wave(wave), to_cfg(phys)); });
}

rs_status rs_classify_surface(double h0_m, const rs_wave *wave, const rs_physics *phys, int *out_rough)
{
    return guarded([&]
                   { need(out_rough, "out") =
                         classify_surface(h0_m, to_wave(wave), to_cfg(phys)) == SurfaceClass::rough ? 1 : 0; });
}

rs_status rs_fresnel_reflection(double eps_r, const rs_wave *wave, double *out)
{
    return guarded([&]
                   { need(out, "out") = fresnel_reflection(eps_r, to_wave(wave)); });
}

rs_status rs_bessel_i0(double x, double *out)
{
    return guarded([&]
                   { need(out, "out") = bessel_i0(x); });
}

rs_status rs_scattering_loss_factor(double h_rms_m, const rs_wave *wave, const rs_physics *phys, double *out_rho,
                                    int *out_clamped)
{
    return guarded([&]
                   {
        const auto cfg = to_cfg(phys);
        const auto lf = scattering_loss_factor_detail(h_rms_m, to_wave(wave), cfg.loss_factor, cfg);
        need(out_rho, "out_rho") = lf.rho;
        if (out_clamped)
            *out_clamped = lf.clamped ? 1 : 0; });
}

rs_status rs_rough_reflection(const rs_material *m, const rs_wave *wave, const rs_physics *phys, double *out)
{
    return guarded([&]
                   { need(out, "out") = rough_reflection_coefficient(to_material(m), to_wave(wave), to_cfg(phys)); });
}

rs_status rs_f_alpha(double alpha, double theta_i, int lobe_norm, double rel_tol, double *out)
{
    return guarded([&]
                   { need(out, "out") = f_alpha_r(alpha, theta_i, to_norm(lobe_norm), rel_tol); });
}

rs_status rs_scenario_load(const char *preset_or_path, rs_scenario **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        auto sc = std::make_unique<rs_scenario>();
        sc->path = resolve_preset(str(preset_or_path, "preset"));
        sc->sc = load_scenario(sc->path);
        o = sc.release(); });
}

rs_status rs_scenario_set(rs_scenario *sc, const char *key, const char *value)
{
    return guarded([&]
                   {
        auto &s = need(sc, "scenario");
        auto ov = s.overrides;
        ov.emplace_back(str(key, "key"), str(value, "value"));
        auto next = load_scenario(s.path, ov);
        s.overrides = std::move(ov);
        s.sc = std::move(next); });
}

void rs_scenario_free(rs_scenario *sc)
{
    delete sc;
}

rs_status rs_scenario_material_count(const rs_scenario *sc, size_t *out)
{
    return guarded([&]
                   { need(out, "out") = need(sc, "scenario").sc.sweep.materials.size(); });
}

rs_status rs_scenario_material(const rs_scenario *sc, size_t index, rs_material *out)
{
    return guarded([&]
                   {
        const auto &mats = need(sc, "scenario").sc.sweep.materials;
        if (index >= mats.size())
            throw ArgumentError("material index out of range");
        from_material(mats[index], &need(out, "out")); });
}

rs_status rs_scenario_find_material(const rs_scenario *sc, const char *name, rs_material *out)
{
    return guarded([&]
                   { from_material(find_material(need(sc, "scenario").sc.sweep.materials, str(name, "name")),
                                   &need(out, "out")); });
}

rs_status rs_scenario_physics(const rs_scenario *sc, rs_physics *out)
{
    return guarded([&]
                   { from_cfg(need(sc, "scenario").sc.sweep.cfg, &need(out, "out")); });
}

rs_status rs_scenario_polarization(const rs_scenario *sc, int *out)
{
    return guarded([&]
                   { need(out, "out") = need(sc, "scenario").sc.sweep.polarization == Polarization::perpendicular
                                            ? RS_POL_PERPENDICULAR
                                            : RS_POL_PARALLEL; });
}

rs_status rs_scenario_frequency_count(const rs_scenario *sc, size_t *out)
{
    return guarded([&]
                   { need(out, "out") = need(sc, "scenario").sc.sweep.frequencies.size(); });
}

rs_status rs_scenario_frequency(const rs_scenario *sc, size_t index, double *out_hz)
{
    return guarded([&]
                   {
        const auto &v = need(sc, "scenario").sc.sweep.frequencies;
        if (index >= v.size())
            throw ArgumentError("frequency index out of range");
        need(out_hz, "out") = v[index]; });
}

rs_status rs_scenario_theta_count(const rs_scenario *sc, size_t *out)
{
    return guarded([&]
                   { need(out, "out") = need(sc, "scenario").sc.sweep.theta_i_grid.size(); });
}

rs_status rs_scenario_theta(const rs_scenario *sc, size_t index, double *out_rad)
{
    return guarded([&]
                   {
        const auto &v = need(sc, "scenario").sc.sweep.theta_i_grid;
        if (index >= v.size())
            throw ArgumentError("theta index out of range");
        need(out_rad, "out") = v[index]; });
}

rs_status rs_scenario_json(const rs_scenario *sc, char *buf, size_t cap, size_t *needed)
{
    std::string s;
    const auto st = guarded([&]
                            { s = spec_to_json(need(sc, "scenario").sc.sweep); });
    return st == RS_OK ? copy_out_status(s, buf, cap, needed) : st;
}

rs_status rs_reflected_power(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                             double *out_dbm)
{
    return guarded([&]
                   {
        const auto &s = need(sc, "scenario");
        const auto &spec = s.sc.sweep;
        need(out_dbm, "out") = reflected_received_power(to_material(m), scenario_wave(s, frequency_hz, theta_i),
                                                        spec.link, spec.tx, spec.cfg); });
}

rs_status rs_scattered_power_ds(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                                int direction, double *out_dbm)
{
    return guarded([&]
                   {
        const auto &s = need(sc, "scenario");
        const auto &spec = s.sc.sweep;
        ScatterDirection dir;
        if (direction == RS_DIR_SPECULAR)
            dir = ScatterDirection::specular;
        else if (direction == RS_DIR_BACKSCATTER)
            dir = ScatterDirection::backscatter;
        else
            throw ArgumentError("invalid direction value " + std::to_string(direction));
        need(out_dbm, "out") = scattered_received_power_ds(to_material(m), scenario_wave(s, frequency_hz, theta_i),
                                                           spec.link, spec.tx, spec.cfg, dir,
                                                           spec.lobe_normalization); });
}

rs_status rs_scattered_power_dual(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                                  double theta_s, double *out_dbm)
{
    return guarded([&]
                   {
        const auto &s = need(sc, "scenario");
        const auto &spec = s.sc.sweep;
        const auto wave = scenario_wave(s, frequency_hz, theta_i);
        ScatterGeometry g;
        g.d_t = spec.link.d_t;
        g.d_r = spec.link.d_r;
        g.length = spec.link.scatterer_length;
        g.theta_s = theta_s;
        const double lambda = wavelength(frequency_hz, spec.cfg);
        const double e_sq =
            scattered_field_sq_dual(to_material(m), wave, g, spec.tx, spec.cfg, spec.lobe_normalization);
        const double p = power_from_field_aperture(e_sq, spec.tx.rx.aperture_at(lambda));
        need(out_dbm, "out") = p > 0.0 ? watt_to_dbm(p) : -std::numeric_limits<double>::infinity(); });
}

rs_status rs_rcs(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                 rs_rcs_result *out)
{
    return guarded([&]
                   {
        const auto &s = need(sc, "scenario");
        auto &o = need(out, "out");
        const auto &spec = s.sc.sweep;
        if (!spec.link.monostatic)
            throw ConfigError("RCS model needs a monostatic link (link.monostatic: true)");
        const auto wave = scenario_wave(s, frequency_hz, theta_i);
        const auto surf = RcsSurfaceParams::from_material(to_material(m), spec.link.scatterer_width, spec.rcs);
        const auto b = rcs_total(surf, wave, spec.cfg);
        o.sigma_total = b.sigma_total;
        o.sigma_smooth = b.sigma_smooth;
        o.sigma_rough = b.sigma_rough;
        o.chi_s = b.chi_s;
        o.excluded_slope_mass = b.excluded_slope_mass;
        o.power_dbm = rcs_received_power(b.sigma_total, spec.link, spec.tx, wave, spec.cfg);
        const double env = b.sigma_rough + b.chi_s * b.chi_s * sigma_smooth_envelope(surf, wave, spec.cfg);
        o.envelope_dbm = rcs_received_power(env, spec.link, spec.tx, wave, spec.cfg); });
}

rs_status rs_compare(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                     rs_compare_result *out)
{
    return guarded([&]
                   {
        const auto &s = need(sc, "scenario");
        auto &o = need(out, "out");
        const auto &spec = s.sc.sweep;
        const auto r = compare_scatter_vs_reflection(to_material(m), scenario_wave(s, frequency_hz, theta_i),
                                                     spec.link, spec.tx, spec.cfg, spec.lobe_normalization);
        o.reflected_dbm = r.reflected_dbm;
        o.scattered_dbm = r.scattered_dbm.value_or(k_nan);
        o.difference_db = r.difference_db.value_or(k_nan);
        o.scattered_negligible = r.scattered_negligible() ? 1 : 0;
        o.gamma_smooth_sq_db = o.rho_s_sq_db = o.friis_path_gain_db = k_nan;
        for (const auto &c : r.components)
        {
            if (c.label == "gamma_smooth_sq_db")
                o.gamma_smooth_sq_db = c.value;
            else if (c.label == "rho_s_sq_db")
                o.rho_s_sq_db = c.value;
            else if (c.label == "friis_path_gain_db")
                o.friis_path_gain_db = c.value;
        } });
}

rs_status rs_run_sweep(const rs_scenario *sc, unsigned threads, rs_table **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        const auto &spec = need(sc, "scenario").sc.sweep;
        o = new rs_table{spec, run_sweep(spec, threads)}; });
}

rs_status rs_table2(const rs_scenario *sc, rs_table **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        const auto &spec = need(sc, "scenario").sc.sweep;
        o = new rs_table{spec, generate_table2(spec)}; });
}

void rs_table_free(rs_table *t)
{
    delete t;
}

rs_status rs_table_row_count(const rs_table *t, size_t *out)
{
    return guarded([&]
                   {
        const auto &tb = need(t, "table");
        need(out, "out") = std::visit([](const auto &d)
                                      { return d.rows.size(); },
                                      tb.data); });
}

rs_status rs_table_csv(const rs_table *t, char *buf, size_t cap, size_t *needed)
{
    std::string s;
    const auto st = guarded([&]
                            {
        const auto &tb = need(t, "table");
        if (const auto *sw = std::get_if<SweepTable>(&tb.data))
            s = sweep_to_csv(*sw);
        else
            s = table2_to_csv(std::get<Table2>(tb.data)); });
    return st == RS_OK ? copy_out_status(s, buf, cap, needed) : st;
}

rs_status rs_table_export(const rs_table *t, const char *path)
{
    return guarded([&]
                   {
        const auto &tb = need(t, "table");
        const std::string p = str(path, "path");
        if (const auto *sw = std::get_if<SweepTable>(&tb.data))
            export_sweep_csv(*sw, tb.spec, p);
        else
            export_table2_csv(std::get<Table2>(tb.data), tb.spec, p); });
}

rs_status rs_table_sweep_row(const rs_table *t, size_t index, rs_sweep_row *out)
{
    return guarded([&]
                   {
        const auto &tb = need(t, "table");
        auto &o = need(out, "out");
        const auto *sw = std::get_if<SweepTable>(&tb.data);
        if (!sw)
            throw ArgumentError("table does not hold sweep rows");
        if (index >= sw->rows.size())
            throw ArgumentError("row index out of range");
        const auto &r = sw->rows[index];
        o.model = from_model(r.model);
        copy_name(o.material, r.material);
        o.frequency_hz = r.frequency;
        o.theta_i = r.theta_i;
        o.ok = r.ok() ? 1 : 0;
        o.power_dbm = r.ok() ? r.power_dbm : k_nan;
        o.envelope_dbm = r.ok() ? r.envelope_dbm : k_nan; });
}

rs_status rs_table_table2_row(const rs_table *t, size_t index, rs_table2_row *out)
{
    return guarded([&]
                   {
        const auto &tb = need(t, "table");
        auto &o = need(out, "out");
        const auto *t2 = std::get_if<Table2>(&tb.data);
        if (!t2)
            throw ArgumentError("table does not hold Table-2 rows");
        if (index >= t2->rows.size())
            throw ArgumentError("row index out of range");
        const auto &r = t2->rows[index];
        o.theta_i = r.theta_i;
        copy_name(o.material, r.material);
        o.reflected_dbm = r.result.reflected_dbm;
        o.scattered_dbm = r.result.scattered_dbm.value_or(k_nan);
        o.difference_db = r.result.difference_db.value_or(k_nan);
        o.paper_reflected_dbm = r.paper_reflected_dbm.value_or(k_nan);
        o.paper_scattered_dbm = r.paper_scattered_dbm.value_or(k_nan);
        o.has_note = r.note.empty() ? 0 : 1; });
}

rs_status rs_profile_load(const char *path, rs_profile **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        o = new rs_profile{load_profile(str(path, "path"))}; });
}

rs_status rs_profile_save(const rs_profile *p, const char *path)
{
    return guarded([&]
                   { save_profile(str(path, "path"), need(p, "profile").p); });
}

void rs_profile_free(rs_profile *p)
{
    delete p;
}

rs_status rs_profile_sample_count(const rs_profile *p, size_t *out)
{
    return guarded([&]
                   { need(out, "out") = need(p, "profile").p.samples.size(); });
}

rs_status rs_profile_sample(const rs_profile *p, size_t index, double *theta_s, double *power_dbm)
{
    return guarded([&]
                   {
        const auto &s = need(p, "profile").p.samples;
        if (index >= s.size())
            throw ArgumentError("sample index out of range");
        if (theta_s)
            *theta_s = s[index].theta_s;
        if (power_dbm)
            *power_dbm = s[index].power_dbm; });
}

rs_status rs_profile_theta_i(const rs_profile *p, double *out)
{
    return guarded([&]
                   { need(out, "out") = need(p, "profile").p.theta_i; });
}

rs_status rs_profile_csv(const rs_profile *p, char *buf, size_t cap, size_t *needed)
{
    std::string s;
    const auto st = guarded([&]
                            { s = profile_to_csv(need(p, "profile").p); });
    return st == RS_OK ? copy_out_status(s, buf, cap, needed) : st;
}

rs_status rs_profile_predict(const rs_scenario *sc, const rs_material *m, double frequency_hz, double theta_i,
                             const double *theta_s, size_t n, rs_profile **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        const auto &s = need(sc, "scenario");
        std::vector<double> grid;
        if (theta_s)
            grid.assign(theta_s, theta_s + n);
        else
            grid = s.sc.profile.theta_s_grid;
        if (grid.empty())
            throw ConfigError("no theta_s grid: pass one or set profile.theta_s_deg in the scenario");
        const auto ctx = profile_context(s);
        auto prof = predict_profile(to_material(m), scenario_wave(s, frequency_hz, theta_i), ctx, grid);
        if (s.sc.profile.hpbw_deg > 0.0)
            prof.meta.hpbw_deg = s.sc.profile.hpbw_deg;
        o = new rs_profile{std::move(prof)}; });
}

rs_status rs_profile_add_noise(const rs_profile *p, double sigma_db, uint64_t seed, rs_profile **out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        o = nullptr;
        if (!(sigma_db >= 0.0))
            throw DomainError("noise sigma must be >= 0");
        o = new rs_profile{add_gaussian_noise(need(p, "profile").p, sigma_db, seed)}; });
}

rs_status rs_fit_dual_lobe(const rs_profile *p, const rs_scenario *sc, const rs_material *skeleton,
                           rs_fit_result *out)
{
    return guarded([&]
                   {
        auto &o = need(out, "out");
        const auto &s = need(sc, "scenario");
        auto prof = need(p, "profile").p;
        if (!(prof.meta.frequency > 0.0))
        {
            if (s.sc.sweep.frequencies.empty())
                throw ConfigError("profile has no frequency and the scenario provides none");
            prof.meta.frequency = s.sc.sweep.frequencies.front();
        }
        const auto ctx = apply_profile_metadata(profile_context(s), prof.meta);
        const auto r = fit_dual_lobe(prof, to_material(skeleton), ctx);
        o.lambda_mix = r.lambda_mix;
        o.alpha_r = r.alpha_r;
        o.alpha_i = r.alpha_i;
        o.s_coeff = r.s_coeff;
        o.rss_db2 = r.rss_db2;
        o.peak_error_db = r.peak_error_db;
        o.samples_used = r.samples_used;
        o.alpha_r_identifiable = r.alpha_r_identifiable ? 1 : 0;
        o.alpha_i_identifiable = r.alpha_i_identifiable ? 1 : 0;
        o.degenerate = r.degenerate ? 1 : 0; });
}

} // extern "C"
