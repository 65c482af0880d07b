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

// rscatter: command-line front end. Talks to the library only through the
// C API in roughscatter.h.

#include "roughscatter/roughscatter.h"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace
{
    constexpr double deg = std::numbers::pi / 180.0;

    // Carries a category for the "error:<category>:" prefix.
    struct CliError
    {
        std::string category;
        std::string message;
        int exit_code;
    };

    [[noreturn]] void fail(const std::string &category, const std::string &message, int code = 1)
    {
        throw CliError{category, message, code};
    }

    void check(rs_status st)
    {
        if (st == RS_OK)
            return;
        fail(rs_status_name(st), rs_last_error(), st == RS_ERR_IO ? 2 : 1);
    }

    std::string trim(const std::string &s)
    {
        const auto a = s.find_first_not_of(" \t");
        if (a == std::string::npos)
            return "";
        return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    }

    std::vector<std::string> split(const std::string &s, char sep)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep))
            out.push_back(trim(item));
        return out;
    }

    double parse_number(const std::string &s, const std::string &what)
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &used);
        }
        catch (const std::exception &)
        {
            fail("usage", what + ": not a number: '" + s + "'");
        }
        if (used != s.size() || !std::isfinite(v))
            fail("usage", what + ": not a number: '" + s + "'");
        return v;
    }

    // "500GHz", "1THz", "900MHz", "142e9Hz"; a bare number means GHz.
    double parse_frequency_hz(const std::string &raw)
    {
        const std::string s = trim(raw);
        std::size_t pos = s.size();
        while (pos > 0 && std::isalpha(static_cast<unsigned char>(s[pos - 1])))
            --pos;
        std::string unit = s.substr(pos);
        for (auto &c : unit)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const double v = parse_number(s.substr(0, pos), "--freq");
        double scale = 1e9;
        if (unit == "hz")
            scale = 1.0;
        else if (unit == "khz")
            scale = 1e3;
        else if (unit == "mhz")
            scale = 1e6;
        else if (unit == "ghz" || unit.empty())
            scale = 1e9;
        else if (unit == "thz")
            scale = 1e12;
        else
            fail("usage", "--freq: unknown unit '" + s.substr(pos) + "' (use Hz, kHz, MHz, GHz or THz)");
        return v * scale;
    }

    std::string fmt(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        const double a = std::abs(x);
        if (x == 0.0 || (a >= 1e-3 && a < 1e9))
        {
            std::snprintf(buf, sizeof buf, "%.6f", x);
            std::string s(buf);
            while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.')
                s.pop_back();
            if (s == "-0.0")
                s = "0.0";
            return s;
        }
        std::snprintf(buf, sizeof buf, "%.6e", x);
        return buf;
    }

    std::string yaml_list(const std::vector<double> &v)
    {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v[i]);
            s += (i ? ", " : "") + std::string(buf);
        }
        return s + "]";
    }

    std::string yaml_quote(const std::string &s)
    {
        std::string out = "\"";
        for (char c : s)
        {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out + "\"";
    }

    struct Options
    {
        std::string preset;
        std::string freq;
        std::string theta_i;
        std::string material;
        std::string format = "csv";
        std::string out;
        std::string variant;
        std::string f_variant;
        std::string pol;
        std::vector<std::string> sets;

        // subcommand specific
        double h0_um = -1.0;
        std::string direction = "specular";
        std::string theta_s;
        unsigned threads = 0;
        std::string profile;
    };

    class Session
    {
    public:
        explicit Session(const Options &o, const std::string &default_preset) : o_(o)
        {
            check(rs_scenario_load((o.preset.empty() ? default_preset : o.preset).c_str(), &sc_));
            if (!o.freq.empty())
            {
                std::vector<double> ghz;
                for (const auto &f : split(o.freq, ','))
                    ghz.push_back(parse_frequency_hz(f) / 1e9);
                set("frequencies_ghz", yaml_list(ghz));
            }
            if (!o.theta_i.empty())
            {
                std::vector<double> d;
                for (const auto &t : split(o.theta_i, ','))
                    d.push_back(parse_number(t, "--theta-i"));
                set("theta_i_deg", yaml_list(d));
            }
            if (!o.variant.empty())
                set("physics.loss_factor", o.variant);
            if (!o.f_variant.empty())
                set("physics.lobe_normalization", o.f_variant);
            if (!o.pol.empty())
                set("physics.polarization", o.pol);
            for (const auto &kv : o.sets)
            {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0)
                    fail("usage", "--set expects key=value, got '" + kv + "'");
                set(kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (!o.material.empty() && std::filesystem::is_regular_file(o.material))
            {
                set("materials_select", "null");
                set("materials_file", yaml_quote(std::filesystem::absolute(o.material).string()));
                material_from_file_ = true;
            }
        }

        ~Session() { rs_scenario_free(sc_); }
        Session(const Session &) = delete;
        Session &operator=(const Session &) = delete;

        rs_scenario *get() const { return sc_; }

        void set(const std::string &key, const std::string &value) { check(rs_scenario_set(sc_, key.c_str(), value.c_str())); }

        // Restricts table commands to the --material selection.
        void select_material()
        {
            if (!o_.material.empty() && !material_from_file_)
                set("materials_select", "[" + yaml_quote(o_.material) + "]");
        }

        rs_material material() const
        {
            rs_material m{};
            std::size_t n = 0;
            check(rs_scenario_material_count(sc_, &n));
            if (!o_.material.empty() && !material_from_file_)
            {
                check(rs_scenario_find_material(sc_, o_.material.c_str(), &m));
                return m;
            }
            if (n != 1)
            {
                std::string names;
                for (std::size_t i = 0; i < n; ++i)
                {
                    check(rs_scenario_material(sc_, i, &m));
                    names += (i ? ", " : "") + std::string(m.name);
                }
                fail("usage", "select a material with --material (available: " + names + ")");
            }
            check(rs_scenario_material(sc_, 0, &m));
            return m;
        }

        double frequency() const
        {
            std::size_t n = 0;
            check(rs_scenario_frequency_count(sc_, &n));
            if (n == 0)
                fail("usage", "--freq is required");
            if (n > 1 && o_.freq.empty())
                fail("usage", "the scenario has several frequencies; pick one with --freq");
            double f = 0.0;
            check(rs_scenario_frequency(sc_, 0, &f));
            return f;
        }

        double theta_i() const
        {
            if (o_.theta_i.empty())
                fail("usage", "--theta-i is required");
            double t = 0.0;
            check(rs_scenario_theta(sc_, 0, &t));
            return t;
        }

        int polarization() const
        {
            int p = 0;
            check(rs_scenario_polarization(sc_, &p));
            return p;
        }

        rs_physics physics() const
        {
            rs_physics p{};
            check(rs_scenario_physics(sc_, &p));
            return p;
        }

    private:
        const Options &o_;
        rs_scenario *sc_ = nullptr;
        bool material_from_file_ = false;
    };

    class Output
    {
    public:
        explicit Output(const Options &o) : o_(o)
        {
            if (o.format != "csv" && o.format != "kv")
                fail("usage", "--format must be csv or kv");
        }

        void put(const std::string &key, const std::string &value)
        {
            text_ += key + (o_.format == "kv" ? "=" : ",") + value + "\n";
        }
        void put(const std::string &key, double value) { put(key, fmt(value)); }

        void flush()
        {
            if (o_.out.empty())
            {
                std::cout << text_;
                return;
            }
            std::ofstream f(o_.out, std::ios::binary | std::ios::trunc);
            if (!(f << text_))
                fail("io", "cannot write '" + o_.out + "'", 2);
        }

    private:
        const Options &o_;
        std::string text_;
    };

    void require_csv(const Options &o, const char *cmd)
    {
        if (o.format != "csv")
            fail("usage", std::string(cmd) + " emits tables; only --format csv is supported");
    }

    template <class Handle, class Csv>
    void emit_csv(Handle *h, Csv csv)
    {
        std::size_t needed = 0;
        check(csv(h, nullptr, 0, &needed));
        std::string buf(needed, '\0');
        check(csv(h, buf.data(), buf.size(), &needed));
        buf.resize(needed - 1);
        std::cout << buf;
    }

    void cmd_critical_height(const Options &o)
    {
        Session s(o, "paper-repro");
        const rs_wave w{s.frequency(), s.theta_i(), s.polarization()};
        const auto phys = s.physics();
        double hc = 0.0;
        check(rs_critical_height(&w, &phys, &hc));
        Output out(o);
        out.put("h_c_um", hc * 1e6);
        if (o.h0_um >= 0.0)
        {
            int rough = 0;
            check(rs_classify_surface(o.h0_um * 1e-6, &w, &phys, &rough));
            out.put("surface", rough ? "rough" : "smooth");
        }
        out.flush();
    }

    void cmd_reflect(const Options &o)
    {
        Session s(o, "paper-repro");
        const auto m = s.material();
        const double f = s.frequency();
        const double t = s.theta_i();
        const rs_wave w{f, t, s.polarization()};
        const auto phys = s.physics();
        double g = 0.0, rho = 0.0, gr = 0.0, p = 0.0;
        int clamped = 0;
        check(rs_fresnel_reflection(m.eps_r, &w, &g));
        check(rs_scattering_loss_factor(m.h_rms_m, &w, &phys, &rho, &clamped));
        check(rs_rough_reflection(&m, &w, &phys, &gr));
        check(rs_reflected_power(s.get(), &m, f, t, &p));
        if (clamped)
            std::cerr << "warning: loss factor exceeded 1 and was clamped\n";
        Output out(o);
        out.put("material", m.name);
        out.put("gamma_smooth", g);
        out.put("rho_s", rho);
        out.put("gamma_rough", gr);
        out.put("reflected_dbm", p);
        out.flush();
    }

    void cmd_scatter_ds(const Options &o)
    {
        Session s(o, "paper-repro");
        const auto m = s.material();
        const double f = s.frequency();
        const double t = s.theta_i();
        double p = 0.0;
        Output out(o);
        out.put("material", m.name);
        if (!o.theta_s.empty())
        {
            const double ts = parse_number(o.theta_s, "--theta-s") * deg;
            check(rs_scattered_power_dual(s.get(), &m, f, t, ts, &p));
            out.put("theta_s_deg", ts / deg);
        }
        else
        {
            int dir = RS_DIR_SPECULAR;
            if (o.direction == "backscatter")
                dir = RS_DIR_BACKSCATTER;
            else if (o.direction != "specular")
                fail("usage", "--direction must be specular or backscatter");
            if (dir == RS_DIR_BACKSCATTER)
                s.set("link.monostatic", "true");
            check(rs_scattered_power_ds(s.get(), &m, f, t, dir, &p));
            out.put("direction", o.direction);
        }
        out.put("scattered_dbm", p);
        out.flush();
    }

    void cmd_scatter_rcs(const Options &o)
    {
        Session s(o, "paper-repro");
        s.set("link.monostatic", "true");
        const auto m = s.material();
        rs_rcs_result r{};
        check(rs_rcs(s.get(), &m, s.frequency(), s.theta_i(), &r));
        Output out(o);
        out.put("material", m.name);
        out.put("sigma_total_db", 10.0 * std::log10(r.sigma_total));
        out.put("sigma_smooth_db", 10.0 * std::log10(r.sigma_smooth));
        out.put("sigma_rough_db", 10.0 * std::log10(r.sigma_rough));
        out.put("chi_s", r.chi_s);
        out.put("excluded_slope_mass", r.excluded_slope_mass);
        out.put("power_dbm", r.power_dbm);
        out.put("envelope_dbm", r.envelope_dbm);
        out.flush();
    }

    void cmd_compare(const Options &o)
    {
        Session s(o, "table2");
        const auto m = s.material();
        rs_compare_result r{};
        check(rs_compare(s.get(), &m, s.frequency(), s.theta_i(), &r));
        Output out(o);
        out.put("material", m.name);
        out.put("reflected_dbm", r.reflected_dbm);
        if (r.scattered_negligible)
        {
            out.put("scattered_dbm", "negligible");
            out.put("difference_db", "");
        }
        else
        {
            out.put("scattered_dbm", r.scattered_dbm);
            out.put("difference_db", r.difference_db);
        }
        out.put("gamma_smooth_sq_db", r.gamma_smooth_sq_db);
        out.put("rho_s_sq_db", r.rho_s_sq_db);
        out.put("friis_path_gain_db", r.friis_path_gain_db);
        out.flush();
    }

    void finish_table(rs_table *t, const Options &o)
    {
        struct Guard
        {
            rs_table *t;
            ~Guard() { rs_table_free(t); }
        } guard{t};
        if (o.out.empty())
            emit_csv(t, rs_table_csv);
        else
            check(rs_table_export(t, o.out.c_str()));
    }

    void cmd_sweep(const Options &o)
    {
        require_csv(o, "sweep");
        Session s(o, "fig5");
        s.select_material();
        rs_table *t = nullptr;
        check(rs_run_sweep(s.get(), o.threads, &t));
        finish_table(t, o);
    }

    void cmd_table2(const Options &o)
    {
        require_csv(o, "table2");
        Session s(o, "table2");
        s.select_material();
        rs_table *t = nullptr;
        check(rs_table2(s.get(), &t));
        finish_table(t, o);
    }

    void cmd_predict(const Options &o)
    {
        require_csv(o, "predict");
        Session s(o, "drywall142");
        if (!o.theta_s.empty())
        {
            std::vector<double> d;
            for (const auto &x : split(o.theta_s, ','))
                d.push_back(parse_number(x, "--theta-s"));
            s.set("profile.theta_s_deg", yaml_list(d));
        }
        const auto m = s.material();
        rs_profile *p = nullptr;
        check(rs_profile_predict(s.get(), &m, s.frequency(), s.theta_i(), nullptr, 0, &p));
        struct Guard
        {
            rs_profile *p;
            ~Guard() { rs_profile_free(p); }
        } guard{p};
        if (o.out.empty())
            emit_csv(p, rs_profile_csv);
        else
            check(rs_profile_save(p, o.out.c_str()));
    }

    void cmd_fit(const Options &o)
    {
        Session s(o, "drywall142");
        const auto m = s.material();
        rs_profile *p = nullptr;
        check(rs_profile_load(o.profile.c_str(), &p));
        struct Guard
        {
            rs_profile *p;
            ~Guard() { rs_profile_free(p); }
        } guard{p};
        rs_fit_result r{};
        check(rs_fit_dual_lobe(p, s.get(), &m, &r));
        Output out(o);
        out.put("lambda_mix", r.lambda_mix);
        out.put("alpha_r", r.alpha_r);
        out.put("alpha_i", r.alpha_i);
        out.put("s_coeff", r.s_coeff);
        out.put("rss_db2", r.rss_db2);
        out.put("peak_error_db", r.peak_error_db);
        out.put("samples_used", std::to_string(r.samples_used));
        out.put("alpha_r_identifiable", r.alpha_r_identifiable ? "true" : "false");
        out.put("alpha_i_identifiable", r.alpha_i_identifiable ? "true" : "false");
        out.put("degenerate", r.degenerate ? "true" : "false");
        out.flush();
    }

    void add_common(CLI::App *cmd, Options &o, bool point)
    {
        cmd->add_option("--preset", o.preset, "Scenario preset name or scenario file");
        cmd->add_option("--freq", o.freq, point ? "Frequency, e.g. 500GHz (bare numbers are GHz)"
                                                : "Frequency list, e.g. 100GHz,1THz (bare numbers are GHz)");
        cmd->add_option("--theta-i", o.theta_i, point ? "Incidence angle in degrees" : "Incidence angle list in degrees");
        cmd->add_option("--material", o.material, "Material name from the scenario, or a material file");
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "kv"}));
        cmd->add_option("--out", o.out, "Write results to this path instead of stdout");
        cmd->add_option("--variant", o.variant, "Loss factor variant")
            ->check(CLI::IsMember({"ament", "boithias", "boithias_squared"}));
        cmd->add_option("--f-variant", o.f_variant, "Lobe normalization")->check(CLI::IsMember({"literal", "hemisphere"}));
        cmd->add_option("--pol", o.pol, "Polarization")->check(CLI::IsMember({"perp", "par"}));
        cmd->add_option("--set", o.sets, "Scenario override key=value (dotted keys, repeatable)");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"rscatter: rough-surface reflection and scattering calculator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rs_version());

    Options o;
    std::vector<std::pair<CLI::App *, void (*)(const Options &)>> commands;

    auto *ch = app.add_subcommand("critical-height", "Rayleigh critical height for a frequency and incidence angle");
    add_common(ch, o, true);
    ch->add_option("--h0-um", o.h0_um, "Also classify a surface with this height (um)");
    commands.emplace_back(ch, cmd_critical_height);

    auto *rf = app.add_subcommand("reflect", "Rough-surface reflection coefficient and received power");
    add_common(rf, o, true);
    commands.emplace_back(rf, cmd_reflect);

    auto *ds = app.add_subcommand("scatter-ds", "Directive-scattering received power");
    add_common(ds, o, true);
    ds->add_option("--direction", o.direction, "specular or backscatter")
        ->check(CLI::IsMember({"specular", "backscatter"}));
    ds->add_option("--theta-s", o.theta_s, "Scatter angle in degrees (dual-lobe model)");
    commands.emplace_back(ds, cmd_scatter_ds);

    auto *rcs = app.add_subcommand("scatter-rcs", "Two-scale monostatic RCS and received power");
    add_common(rcs, o, true);
    commands.emplace_back(rcs, cmd_scatter_rcs);

    auto *cmp = app.add_subcommand("compare", "Scattered vs reflected power in the specular direction");
    add_common(cmp, o, true);
    commands.emplace_back(cmp, cmd_compare);

    auto *sw = app.add_subcommand("sweep", "Run a scenario sweep and emit CSV");
    add_common(sw, o, false);
    sw->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
    commands.emplace_back(sw, cmd_sweep);

    auto *t2 = app.add_subcommand("table2", "Reflected and scattered power table at 500 GHz");
    add_common(t2, o, false);
    commands.emplace_back(t2, cmd_table2);

    auto *fit = app.add_subcommand("fit", "Fit dual-lobe parameters to a measured angular profile");
    add_common(fit, o, true);
    fit->add_option("--profile", o.profile, "Profile CSV (theta_s_deg,power_dbm) with a .meta sidecar")->required();
    commands.emplace_back(fit, cmd_fit);

    auto *pr = app.add_subcommand("predict", "Predict an angular power profile");
    add_common(pr, o, true);
    pr->add_option("--theta-s", o.theta_s, "Scatter angle list in degrees");
    commands.emplace_back(pr, cmd_predict);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "error:usage: " << e.what() << "\n";
        return 1;
    }

    try
    {
        for (const auto &[cmd, fn] : commands)
            if (cmd->parsed())
                fn(o);
    }
    catch (const CliError &e)
    {
        std::cerr << "error:" << e.category << ": " << e.message << "\n";
        return e.exit_code;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error:internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
