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
#include "roughscatter/fitting.hpp"
#include "roughscatter/units.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

namespace roughscatter
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return "";
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        }

        double number(const std::string &raw, const std::string &origin, std::size_t line, const std::string &what)
        {
            const auto s = trim(raw);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
                throw ParseError(origin + ": " + what + " is not a finite number: '" + raw + "'", line);
            return v;
        }

        // Twelve significant digits hides unit-conversion noise (deg/rad, dBm/W).
        std::string meta_number(double x)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            return buf;
        }

        struct Meta
        {
            bool has_theta_i = false;
            AngularPowerProfile p;
        };

        Meta parse_meta(const std::string &text, const std::string &origin)
        {
            Meta out;
            std::istringstream in(text);
            std::string raw;
            std::size_t line = 0;
            while (std::getline(in, raw))
            {
                ++line;
                const auto hash = raw.find('#');
                const auto s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
                if (s.empty())
                    continue;
                const auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw ParseError(origin + ": expected key=value", line);
                const auto key = trim(s.substr(0, eq));
                const auto val = trim(s.substr(eq + 1));
                auto &m = out.p.meta;
                if (key == "theta_i_deg")
                {
                    const double d = number(val, origin, line, key);
                    if (d < 0.0 || d > 90.0)
                        throw DomainError(origin + ": line " + std::to_string(line) + ": theta_i_deg must lie in [0, 90]");
                    out.p.theta_i = deg_to_rad(d);
                    out.has_theta_i = true;
                }
                else if (key == "frequency_ghz")
                    m.frequency = number(val, origin, line, key) * 1e9;
                else if (key == "tx_power_dbm")
                    m.tx_power_dbm = number(val, origin, line, key);
                else if (key == "antenna_gain_dbi")
                    m.antenna_gain_dbi = number(val, origin, line, key);
                else if (key == "hpbw_deg")
                    m.hpbw_deg = number(val, origin, line, key);
                else if (key == "radius_m")
                    m.radius_m = number(val, origin, line, key);
                else if (key == "material_name")
                    m.material_name = val;
                else
                    throw ParseError(origin + ": unknown metadata key '" + key + "'", line);
            }
            return out;
        }
    }

    void AngularPowerProfile::validate() const
    {
        if (!(theta_i >= 0.0 && theta_i <= half_pi))
            throw DomainError("profile theta_i must lie in [0, 90] degrees");
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double t = samples[i].theta_s;
            if (!(std::abs(t) <= half_pi))
                throw DomainError("profile theta_s must lie in [-90, 90] degrees");
            if (i > 0 && !(samples[i - 1].theta_s < t))
                throw DomainError("profile samples must be strictly increasing in theta_s");
        }
    }

    AngularPowerProfile parse_profile(const std::string &csv_text, const std::string &meta_text,
                                      const std::string &origin)
    {
        auto meta = parse_meta(meta_text, origin + ".meta");
        if (!meta.has_theta_i)
            throw ParseError(origin + ".meta: missing required key 'theta_i_deg'", 0);
        auto &p = meta.p;

        const auto recs = parse_csv(csv_text, origin);
        if (recs.empty())
            throw ParseError(origin + ": missing header row", 1);
        const auto &hdr = recs.front().fields;
        if (hdr.size() != 2 || trim(hdr[0]) != "theta_s_deg" || trim(hdr[1]) != "power_dbm")
            throw ParseError(origin + ": header must be 'theta_s_deg,power_dbm'", recs.front().line);

        struct Row
        {
            double deg;
            double dbm;
            std::size_t line;
        };
        std::vector<Row> rows;
        for (std::size_t i = 1; i < recs.size(); ++i)
        {
            const auto &f = recs[i].fields;
            const auto line = recs[i].line;
            if (f.size() != 2)
                throw ParseError(origin + ": expected 2 fields, got " + std::to_string(f.size()), line);
            const double deg = number(f[0], origin, line, "theta_s_deg");
            const double dbm = number(f[1], origin, line, "power_dbm");
            if (std::abs(deg) > 90.0)
                throw DomainError(origin + ": line " + std::to_string(line) + ": theta_s_deg " + trim(f[0]) +
                                  " outside [-90, 90]");
            rows.push_back({deg, dbm, line});
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b)
                         { return a.deg < b.deg; });
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].deg == rows[i - 1].deg)
            {
                const auto a = std::min(rows[i].line, rows[i - 1].line);
                const auto b = std::max(rows[i].line, rows[i - 1].line);
                throw ParseError(origin + ": duplicate theta_s_deg " + format_double(rows[i].deg) + " on lines " +
                                     std::to_string(a) + " and " + std::to_string(b),
                                 b);
            }
        for (const auto &r : rows)
            p.samples.push_back({deg_to_rad(r.deg), r.dbm});
        p.validate();
        return p;
    }

    AngularPowerProfile load_profile(const std::string &csv_path)
    {
        const auto meta_path = csv_path + ".meta";
        if (!std::filesystem::exists(meta_path))
            throw IoError("profile metadata '" + meta_path + "' not found");
        return parse_profile(read_text_file(csv_path), read_text_file(meta_path), csv_path);
    }

    std::string profile_to_csv(const AngularPowerProfile &p)
    {
        std::string out = "theta_s_deg,power_dbm\n";
        for (const auto &s : p.samples)
            out += format_fixed6(rad_to_deg(s.theta_s)) + "," + format_fixed6(s.power_dbm) + "\n";
        return out;
    }

    std::string profile_meta_to_string(const AngularPowerProfile &p)
    {
        std::string out;
        out += "theta_i_deg=" + meta_number(rad_to_deg(p.theta_i)) + "\n";
        if (p.meta.frequency > 0.0)
            out += "frequency_ghz=" + meta_number(p.meta.frequency / 1e9) + "\n";
        if (p.meta.tx_power_dbm)
            out += "tx_power_dbm=" + meta_number(*p.meta.tx_power_dbm) + "\n";
        if (p.meta.antenna_gain_dbi)
            out += "antenna_gain_dbi=" + meta_number(*p.meta.antenna_gain_dbi) + "\n";
        if (p.meta.hpbw_deg > 0.0)
            out += "hpbw_deg=" + meta_number(p.meta.hpbw_deg) + "\n";
        if (p.meta.radius_m > 0.0)
            out += "radius_m=" + meta_number(p.meta.radius_m) + "\n";
        if (!p.meta.material_name.empty())
            out += "material_name=" + p.meta.material_name + "\n";
        return out;
    }

    void save_profile(const std::string &csv_path, const AngularPowerProfile &p)
    {
        write_text_file(csv_path, profile_to_csv(p));
        write_text_file(csv_path + ".meta", profile_meta_to_string(p));
    }
}
