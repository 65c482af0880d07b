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

#include "roughscatter/config.hpp"
#include "roughscatter/csv.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/units.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#ifndef ROUGHSCATTER_DATA_DIR
#define ROUGHSCATTER_DATA_DIR "."
#endif

namespace fs = std::filesystem;

namespace roughscatter
{
    namespace
    {
        std::size_t line_of(const YAML::Node &n)
        {
            const auto m = n.Mark();
            return m.line >= 0 ? static_cast<std::size_t>(m.line) + 1 : 0;
        }

        [[noreturn]] void fail_at(const YAML::Node &n, const std::string &origin, const std::string &msg)
        {
            throw ParseError(origin + ": " + msg, line_of(n));
        }

        void reject_unknown(const YAML::Node &map, std::initializer_list<std::string_view> allowed,
                            const std::string &origin, const std::string &where)
        {
            if (!map.IsMap())
                fail_at(map, origin, where + " must be a mapping");
            for (const auto &kv : map)
            {
                const auto key = kv.first.Scalar();
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                {
                    std::string list;
                    for (auto a : allowed)
                        list += (list.empty() ? "" : ", ") + std::string(a);
                    fail_at(kv.first, origin, "unknown key '" + key + "' in " + where + " (allowed: " + list + ")");
                }
            }
        }

        double as_double(const YAML::Node &n, const std::string &origin, const std::string &key)
        {
            if (!n.IsScalar())
                fail_at(n, origin, "'" + key + "' must be a number");
            const std::string &s = n.Scalar();
            double v = 0.0;
            const char *first = s.data();
            const char *last = s.data() + s.size();
            if (first != last && *first == '+')
                ++first;
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last)
                fail_at(n, origin, "'" + key + "' is not a number: '" + s + "'");
            return v;
        }

        std::string as_string(const YAML::Node &n, const std::string &origin, const std::string &key)
        {
            if (!n.IsScalar())
                fail_at(n, origin, "'" + key + "' must be a scalar");
            return n.Scalar();
        }

        bool as_bool(const YAML::Node &n, const std::string &origin, const std::string &key)
        {
            const auto s = as_string(n, origin, key);
            if (s == "true" || s == "yes" || s == "on" || s == "1")
                return true;
            if (s == "false" || s == "no" || s == "off" || s == "0")
                return false;
            fail_at(n, origin, "'" + key + "' must be true or false");
        }

        // Scalar, list, or {start, stop, step} mapping; stop is inclusive.
        std::vector<double> as_grid(const YAML::Node &n, const std::string &origin, const std::string &key)
        {
            std::vector<double> out;
            if (n.IsScalar())
                out.push_back(as_double(n, origin, key));
            else if (n.IsSequence())
                for (const auto &e : n)
                    out.push_back(as_double(e, origin, key));
            else if (n.IsMap())
            {
                reject_unknown(n, {"start", "stop", "step"}, origin, key);
                if (!n["start"] || !n["stop"] || !n["step"])
                    fail_at(n, origin, "'" + key + "' range needs start, stop and step");
                const double a = as_double(n["start"], origin, key + ".start");
                const double b = as_double(n["stop"], origin, key + ".stop");
                const double h = as_double(n["step"], origin, key + ".step");
                if (!(h > 0.0) || b < a)
                    fail_at(n, origin, "'" + key + "' range needs step > 0 and stop >= start");
                const auto count = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1;
                for (std::size_t i = 0; i < count; ++i)
                    out.push_back(a + static_cast<double>(i) * h);
            }
            else
                fail_at(n, origin, "'" + key + "' must be a number, list or range");
            return out;
        }

        template <class Parse>
        auto as_enum(const YAML::Node &n, const std::string &origin, const std::string &key, Parse parse)
        {
            const auto s = as_string(n, origin, key);
            try
            {
                return parse(s);
            }
            catch (const Error &e)
            {
                // Well-formed YAML with a value outside the allowed set.
                throw ConfigError(origin + ": line " + std::to_string(line_of(n)) + ": " + e.what());
            }
        }

        Material material_from_node(const YAML::Node &doc, const std::string &origin)
        {
            reject_unknown(doc, {"name", "eps_r", "h_rms_um", "l_c_um", "s_coeff", "alpha_r", "alpha_i", "lambda_mix"},
                           origin, "material");
            for (const char *req : {"name", "eps_r", "h_rms_um", "l_c_um", "s_coeff", "alpha_r"})
                if (!doc[req])
                    fail_at(doc, origin, std::string("material is missing required key '") + req + "'");

            Material m;
            m.name = as_string(doc["name"], origin, "name");
            m.eps_r = as_double(doc["eps_r"], origin, "eps_r");
            m.h_rms = um_to_m(as_double(doc["h_rms_um"], origin, "h_rms_um"));
            m.l_c = um_to_m(as_double(doc["l_c_um"], origin, "l_c_um"));
            m.s_coeff = as_double(doc["s_coeff"], origin, "s_coeff");
            m.alpha_r = as_double(doc["alpha_r"], origin, "alpha_r");
            m.alpha_i = doc["alpha_i"] ? as_double(doc["alpha_i"], origin, "alpha_i") : m.alpha_r;
            m.lambda_mix = doc["lambda_mix"] ? as_double(doc["lambda_mix"], origin, "lambda_mix") : 1.0;
            try
            {
                m.validate();
            }
            catch (const DomainError &e)
            {
                fail_at(doc, origin, "material '" + m.name + "': " + e.what());
            }
            return m;
        }

        std::string to_chars_string(double x, int precision = -1)
        {
            char buf[64];
            const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, x)
                                           : std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general,
                                                           precision);
            return std::string(buf, res.ptr);
        }

        double parse_plain(const std::string &s)
        {
            double v = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), v);
            return v;
        }

        // Shortest decimal u with um_to_m(u) == m.
        std::string format_um(double m)
        {
            const double scaled = m_to_um(m);
            for (int prec = 1; prec <= 17; ++prec)
            {
                for (double cand : {scaled, std::nextafter(scaled, 0.0), std::nextafter(scaled, HUGE_VAL)})
                {
                    const auto s = to_chars_string(cand, prec);
                    if (um_to_m(parse_plain(s)) == m)
                        return s;
                }
            }
            return to_chars_string(scaled);
        }

        std::string lower(std::string s)
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c)
                           { return static_cast<char>(std::tolower(c)); });
            return s;
        }

        YAML::Node load_yaml(const std::string &text, const std::string &origin)
        {
            try
            {
                return YAML::Load(text);
            }
            catch (const YAML::Exception &e)
            {
                throw ParseError(origin + ": " + e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
            }
        }

        void apply_override(YAML::Node root, const std::string &dotted, const std::string &value,
                            const std::string &origin)
        {
            if (dotted.empty())
                throw ConfigError("empty override key");
            // A non-null material source replaces the other one.
            const bool clears = value.find_first_not_of(" \t") == std::string::npos || value == "null" || value == "~";
            if (dotted == "materials" && !clears)
                root.remove("materials_file");
            else if (dotted == "materials_file" && !clears)
                root.remove("materials");
            YAML::Node cur = root;
            std::size_t start = 0;
            for (;;)
            {
                const auto dot = dotted.find('.', start);
                const std::string part = dotted.substr(start, dot - start);
                if (part.empty())
                    throw ConfigError("malformed override key '" + dotted + "'");
                if (dot == std::string::npos)
                {
                    auto v = load_yaml(value, origin + " override " + dotted);
                    if (v.IsNull())
                        cur.remove(part);
                    else
                        cur[part] = v;
                    return;
                }
                if (!cur[part] || !cur[part].IsMap())
                    cur[part] = YAML::Node(YAML::NodeType::Map);
                cur.reset(cur[part]);
                start = dot + 1;
            }
        }

        fs::path resolve_relative(const std::string &p, const std::string &base_dir)
        {
            fs::path path(p);
            if (path.is_absolute())
                return path;
            const fs::path local = fs::path(base_dir) / path;
            if (fs::exists(local))
                return local;
            const fs::path shipped = fs::path(data_dir()) / path;
            if (fs::exists(shipped))
                return shipped;
            return local;
        }

        void parse_physics(const YAML::Node &n, SweepSpec &spec, const std::string &origin)
        {
            reject_unknown(n, {"speed_of_light", "loss_factor", "quadrature_rel_tol", "polarization", "lobe_normalization"},
                           origin, "physics");
            if (n["speed_of_light"])
                spec.cfg.speed_of_light = as_double(n["speed_of_light"], origin, "physics.speed_of_light");
            if (n["loss_factor"])
                spec.cfg.loss_factor = as_enum(n["loss_factor"], origin, "physics.loss_factor",
                                               parse_loss_factor_variant);
            if (n["quadrature_rel_tol"])
                spec.cfg.quadrature_rel_tol = as_double(n["quadrature_rel_tol"], origin, "physics.quadrature_rel_tol");
            if (n["polarization"])
                spec.polarization = as_enum(n["polarization"], origin, "physics.polarization", parse_polarization);
            if (n["lobe_normalization"])
                spec.lobe_normalization = as_enum(n["lobe_normalization"], origin, "physics.lobe_normalization",
                                                  parse_lobe_normalization);
        }

        void parse_link(const YAML::Node &n, SweepSpec &spec, const std::string &origin)
        {
            reject_unknown(n, {"d_t_m", "d_r_m", "scatterer_length_m", "scatterer_width_m", "monostatic"}, origin,
                           "link");
            auto &l = spec.link;
            if (n["d_t_m"])
                l.d_t = as_double(n["d_t_m"], origin, "link.d_t_m");
            if (n["d_r_m"])
                l.d_r = as_double(n["d_r_m"], origin, "link.d_r_m");
            if (n["scatterer_length_m"])
                l.scatterer_length = as_double(n["scatterer_length_m"], origin, "link.scatterer_length_m");
            if (n["scatterer_width_m"])
                l.scatterer_width = as_double(n["scatterer_width_m"], origin, "link.scatterer_width_m");
            if (n["monostatic"])
                l.monostatic = as_bool(n["monostatic"], origin, "link.monostatic");
        }

        void parse_tx(const YAML::Node &n, SweepSpec &spec, const std::string &origin)
        {
            reject_unknown(n, {"p_t_w", "p_t_dbm", "gain_mode", "aperture_cm2", "rx_aperture_cm2", "gain_dbi", "rx_gain_dbi"},
                           origin, "tx");
            auto &tx = spec.tx;
            if (n["p_t_w"] && n["p_t_dbm"])
                fail_at(n, origin, "tx: give either p_t_w or p_t_dbm, not both");
            if (n["p_t_w"])
                tx.p_t = as_double(n["p_t_w"], origin, "tx.p_t_w");
            if (n["p_t_dbm"])
                tx.p_t = dbm_to_watt(as_double(n["p_t_dbm"], origin, "tx.p_t_dbm"));

            std::string mode = "constant_aperture";
            if (n["gain_mode"])
                mode = as_string(n["gain_mode"], origin, "tx.gain_mode");
            if (mode == "constant_aperture")
            {
                if (n["gain_dbi"] || n["rx_gain_dbi"])
                    fail_at(n, origin, "tx: gain_dbi/rx_gain_dbi require gain_mode: fixed_gain");
                double a_tx = tx.tx.mode == GainMode::constant_aperture ? tx.tx.aperture * 1e4 : 5.0;
                if (n["aperture_cm2"])
                    a_tx = as_double(n["aperture_cm2"], origin, "tx.aperture_cm2");
                const double a_rx = n["rx_aperture_cm2"] ? as_double(n["rx_aperture_cm2"], origin, "tx.rx_aperture_cm2")
                                                         : a_tx;
                tx.tx = Antenna::with_aperture(a_tx * 1e-4);
                tx.rx = Antenna::with_aperture(a_rx * 1e-4);
            }
            else if (mode == "fixed_gain")
            {
                if (n["aperture_cm2"] || n["rx_aperture_cm2"])
                    fail_at(n, origin, "tx: aperture_cm2 requires gain_mode: constant_aperture");
                const double g_tx = n["gain_dbi"] ? as_double(n["gain_dbi"], origin, "tx.gain_dbi") : 0.0;
                const double g_rx = n["rx_gain_dbi"] ? as_double(n["rx_gain_dbi"], origin, "tx.rx_gain_dbi") : g_tx;
                tx.tx = Antenna::fixed(from_db(g_tx));
                tx.rx = Antenna::fixed(from_db(g_rx));
            }
            else
                fail_at(n["gain_mode"], origin, "tx.gain_mode must be constant_aperture or fixed_gain");
        }

        void parse_rcs(const YAML::Node &n, SweepSpec &spec, const std::string &origin)
        {
            reject_unknown(n, {"polarization", "slope_sigma", "patch_half_length_m", "patch_length_factor"}, origin, "rcs");
            if (n["polarization"])
                spec.rcs.polarization = as_enum(n["polarization"], origin, "rcs.polarization", parse_rcs_polarization);
            if (n["slope_sigma"])
                spec.rcs.slope_sigma = as_double(n["slope_sigma"], origin, "rcs.slope_sigma");
            if (n["patch_half_length_m"])
                spec.rcs.patch_half_length = as_double(n["patch_half_length_m"], origin, "rcs.patch_half_length_m");
            if (n["patch_length_factor"])
                spec.rcs.patch_length_factor = as_double(n["patch_length_factor"], origin, "rcs.patch_length_factor");
        }

        void parse_profile(const YAML::Node &n, ProfileSettings &p, const std::string &origin)
        {
            reject_unknown(n, {"theta_s_deg", "hpbw_deg", "beam_convolution"}, origin, "profile");
            if (n["theta_s_deg"])
            {
                p.theta_s_grid.clear();
                for (double d : as_grid(n["theta_s_deg"], origin, "profile.theta_s_deg"))
                {
                    if (!(std::abs(d) <= 90.0))
                        fail_at(n["theta_s_deg"], origin, "profile.theta_s_deg values must lie in [-90, 90]");
                    p.theta_s_grid.push_back(deg_to_rad(d));
                }
            }
            if (n["hpbw_deg"])
                p.hpbw_deg = as_double(n["hpbw_deg"], origin, "profile.hpbw_deg");
            if (n["beam_convolution"])
                p.beam_convolution = as_bool(n["beam_convolution"], origin, "profile.beam_convolution");
            if (p.beam_convolution && !(p.hpbw_deg > 0.0))
                fail_at(n, origin, "profile.beam_convolution requires hpbw_deg > 0");
        }
    }

    std::string format_double(double x)
    {
        return to_chars_string(x);
    }

    std::vector<Material> parse_materials(const std::string &text, const std::string &origin)
    {
        std::vector<YAML::Node> docs;
        try
        {
            docs = YAML::LoadAll(text);
        }
        catch (const YAML::Exception &e)
        {
            throw ParseError(origin + ": " + e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
        }
        std::vector<Material> out;
        std::set<std::string> names;
        for (const auto &doc : docs)
        {
            if (doc.IsNull())
                continue;
            auto m = material_from_node(doc, origin);
            if (!names.insert(m.name).second)
                fail_at(doc, origin, "duplicate material name '" + m.name + "'");
            out.push_back(std::move(m));
        }
        if (out.empty())
            throw ParseError(origin + ": no material documents found", 0);
        return out;
    }

    std::vector<Material> load_materials(const std::string &path)
    {
        return parse_materials(read_text_file(path), path);
    }

    std::string materials_to_string(const std::vector<Material> &materials)
    {
        std::string out;
        for (const auto &m : materials)
        {
            YAML::Emitter e;
            e << YAML::BeginMap;
            e << YAML::Key << "name" << YAML::Value << m.name;
            e << YAML::Key << "eps_r" << YAML::Value << format_double(m.eps_r);
            e << YAML::Key << "h_rms_um" << YAML::Value << format_um(m.h_rms);
            e << YAML::Key << "l_c_um" << YAML::Value << format_um(m.l_c);
            e << YAML::Key << "s_coeff" << YAML::Value << format_double(m.s_coeff);
            e << YAML::Key << "alpha_r" << YAML::Value << format_double(m.alpha_r);
            e << YAML::Key << "alpha_i" << YAML::Value << format_double(m.alpha_i);
            e << YAML::Key << "lambda_mix" << YAML::Value << format_double(m.lambda_mix);
            e << YAML::EndMap;
            out += "---\n";
            out += e.c_str();
            out += "\n";
        }
        return out;
    }

    void save_materials(const std::string &path, const std::vector<Material> &materials)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open '" + path + "' for writing");
        f << materials_to_string(materials);
        if (!f)
            throw IoError("error writing '" + path + "'");
    }

    const Material &find_material(const std::vector<Material> &materials, const std::string &name)
    {
        for (const auto &m : materials)
            if (m.name == name)
                return m;
        const auto key = lower(name);
        for (const auto &m : materials)
            if (lower(m.name) == key)
                return m;
        const Material *hit = nullptr;
        for (const auto &m : materials)
            if (lower(m.name).find(key) != std::string::npos)
            {
                if (hit)
                    throw ConfigError("material name '" + name + "' is ambiguous");
                hit = &m;
            }
        if (!hit)
        {
            std::string known;
            for (const auto &m : materials)
                known += (known.empty() ? "" : ", ") + m.name;
            throw ConfigError("unknown material '" + name + "' (known: " + known + ")");
        }
        return *hit;
    }

    Scenario parse_scenario(const std::string &text, const std::string &base_dir, const Overrides &overrides,
                            const std::string &origin)
    {
        YAML::Node root = load_yaml(text, origin);
        if (!root.IsMap())
            throw ParseError(origin + ": scenario must be a mapping", line_of(root));
        for (const auto &[k, v] : overrides)
            apply_override(root, k, v, origin);

        reject_unknown(root,
                       {"name", "convention_id", "materials_file", "materials", "materials_select", "models",
                        "frequencies_ghz", "theta_i_deg", "physics", "link", "tx", "rcs", "profile"},
                       origin, "scenario");

        Scenario sc;
        sc.source = origin;
        auto &spec = sc.sweep;
        spec.name = root["name"] ? as_string(root["name"], origin, "name") : fs::path(origin).stem().string();
        spec.convention_id = root["convention_id"] ? as_string(root["convention_id"], origin, "convention_id") : spec.name;
        spec.tx.p_t = 10.0;
        spec.tx.tx = Antenna::with_aperture(5e-4);
        spec.tx.rx = Antenna::with_aperture(5e-4);

        if (root["materials_file"] && root["materials"])
            fail_at(root, origin, "give either materials_file or materials, not both");
        if (root["materials_file"])
        {
            const auto p = resolve_relative(as_string(root["materials_file"], origin, "materials_file"), base_dir);
            spec.materials = load_materials(p.string());
        }
        else if (root["materials"])
        {
            if (!root["materials"].IsSequence())
                fail_at(root["materials"], origin, "'materials' must be a list");
            for (const auto &m : root["materials"])
                spec.materials.push_back(material_from_node(m, origin));
        }
        else
            spec.materials = {table1_smooth(), table1_intermediate(), table1_rough()};

        if (root["materials_select"])
        {
            const auto &sel = root["materials_select"];
            std::vector<Material> chosen;
            try
            {
                if (sel.IsSequence())
                    for (const auto &s : sel)
                        chosen.push_back(find_material(spec.materials, as_string(s, origin, "materials_select")));
                else
                    chosen.push_back(find_material(spec.materials, as_string(sel, origin, "materials_select")));
            }
            catch (const ParseError &)
            {
                throw;
            }
            catch (const ConfigError &e)
            {
                fail_at(sel, origin, e.what());
            }
            spec.materials = std::move(chosen);
        }

        if (root["models"])
        {
            const auto &n = root["models"];
            if (n.IsSequence())
                for (const auto &e : n)
                    spec.models.push_back(as_enum(e, origin, "models", parse_sweep_model));
            else
                spec.models.push_back(as_enum(n, origin, "models", parse_sweep_model));
        }
        else
            spec.models = {SweepModel::reflection};

        if (root["frequencies_ghz"])
            for (double g : as_grid(root["frequencies_ghz"], origin, "frequencies_ghz"))
                spec.frequencies.push_back(g * 1e9);

        if (root["theta_i_deg"])
            for (double d : as_grid(root["theta_i_deg"], origin, "theta_i_deg"))
                spec.theta_i_grid.push_back(deg_to_rad(d));
        else
            for (int d = 1; d <= 89; ++d)
                spec.theta_i_grid.push_back(deg_to_rad(d));

        if (root["physics"])
            parse_physics(root["physics"], spec, origin);
        if (root["link"])
            parse_link(root["link"], spec, origin);
        if (root["tx"])
            parse_tx(root["tx"], spec, origin);
        if (root["rcs"])
            parse_rcs(root["rcs"], spec, origin);
        if (root["profile"])
            parse_profile(root["profile"], sc.profile, origin);

        try
        {
            spec.validate();
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(origin + ": " + e.what());
        }
        return sc;
    }

    Scenario load_scenario(const std::string &path, const Overrides &overrides)
    {
        const auto base = fs::path(path).parent_path().string();
        return parse_scenario(read_text_file(path), base.empty() ? "." : base, overrides, path);
    }

    std::string data_dir()
    {
        if (const char *env = std::getenv("ROUGHSCATTER_DATA_DIR"); env && *env)
            return env;
        return ROUGHSCATTER_DATA_DIR;
    }

    std::string resolve_preset(const std::string &name_or_path)
    {
        if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path))
            return name_or_path;
        const auto p = fs::path(data_dir()) / "presets" / (name_or_path + ".cfg");
        if (fs::exists(p))
            return p.string();
        throw IoError("preset '" + name_or_path + "' not found (looked for " + p.string() + ")");
    }

    Scenario load_preset(const std::string &name_or_path, const Overrides &overrides)
    {
        return load_scenario(resolve_preset(name_or_path), overrides);
    }
}
