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

#include "roughscatter/csv.hpp"
#include "roughscatter/config.hpp"
#include "roughscatter/error.hpp"
#include "roughscatter/units.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace roughscatter
{
    namespace
    {
        using json = nlohmann::ordered_json;

        double parse_number(const std::string &s, const std::string &origin, std::size_t line, const char *column)
        {
            if (s.empty())
                return std::numeric_limits<double>::quiet_NaN();
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw ParseError(origin + ": column " + column + ": not a number: '" + s + "'", line);
            return v;
        }

        void check_header(const std::vector<CsvRecord> &recs, const char *expected, const std::string &origin)
        {
            if (recs.empty())
                throw ParseError(origin + ": missing header row", 1);
            std::string got;
            for (std::size_t i = 0; i < recs.front().fields.size(); ++i)
                got += (i ? "," : "") + recs.front().fields[i];
            if (got != expected)
                throw ParseError(origin + ": unexpected header '" + got + "' (expected '" + expected + "')",
                                 recs.front().line);
        }

        json antenna_json(const Antenna &a)
        {
            if (a.mode == GainMode::constant_aperture)
                return {{"mode", "constant_aperture"}, {"aperture_m2", a.aperture}};
            return {{"mode", "fixed_gain"}, {"gain_linear", a.gain}};
        }

        std::string utc_timestamp()
        {
            const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }

        void write_sidecar(const std::string &path, const SweepSpec &spec, const std::string &kind, std::size_t rows)
        {
            json meta;
            meta["kind"] = kind;
            meta["convention_id"] = spec.convention_id;
            meta["rows"] = rows;
            meta["generated_utc"] = utc_timestamp();
            meta["spec"] = json::parse(spec_to_json(spec));
            write_text_file(path + ".meta.json", meta.dump(2) + "\n");
        }
    }

    std::vector<CsvRecord> parse_csv(const std::string &text, const std::string &origin)
    {
        std::vector<CsvRecord> out;
        CsvRecord rec;
        std::string field;
        bool in_quotes = false;
        bool field_started = false;
        std::size_t line = 1;
        std::size_t quote_line = 0;
        rec.line = 1;

        auto end_field = [&]
        {
            rec.fields.push_back(std::move(field));
            field.clear();
            field_started = false;
        };
        auto end_record = [&]
        {
            end_field();
            if (!(rec.fields.size() == 1 && rec.fields[0].empty()))
                out.push_back(std::move(rec));
            rec = CsvRecord{};
            rec.line = line;
        };

        for (std::size_t i = 0; i < text.size(); ++i)
        {
            const char c = text[i];
            if (in_quotes)
            {
                if (c == '"')
                {
                    if (i + 1 < text.size() && text[i + 1] == '"')
                    {
                        field += '"';
                        ++i;
                    }
                    else
                        in_quotes = false;
                }
                else
                {
                    if (c == '\n')
                        ++line;
                    field += c;
                }
                continue;
            }
            switch (c)
            {
            case '"':
                if (field_started && !field.empty())
                    throw ParseError(origin + ": stray quote inside unquoted field", line);
                in_quotes = true;
                field_started = true;
                quote_line = line;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                field += c;
                field_started = true;
            }
        }
        if (in_quotes)
            throw ParseError(origin + ": unterminated quoted field", quote_line);
        if (field_started || !rec.fields.empty())
            end_record();
        return out;
    }

    std::string csv_escape(const std::string &field)
    {
        if (field.find_first_of(",\"\n\r") == std::string::npos)
            return field;
        std::string out = "\"";
        for (char c : field)
        {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    std::string format_fixed6(double x)
    {
        if (std::isnan(x))
            return "";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", x);
        std::string s(buf);
        if (s == "-0.000000")
            s = "0.000000";
        return s;
    }

    std::string sweep_to_csv(const SweepTable &table)
    {
        std::string out = std::string(sweep_csv_header) + "\n";
        for (const auto &r : table.rows)
        {
            out += std::string(to_string(r.model)) + ",";
            out += csv_escape(r.material) + ",";
            out += format_double(r.frequency) + ",";
            out += format_fixed6(rad_to_deg(r.theta_i)) + ",";
            out += (r.ok() ? format_fixed6(r.power_dbm) : "") + ",";
            out += (r.ok() ? format_fixed6(r.envelope_dbm) : "") + ",";
            out += csv_escape(r.status) + ",";
            out += csv_escape(table.convention_id) + "\n";
        }
        return out;
    }

    SweepTable sweep_from_csv(const std::string &text, const std::string &origin)
    {
        const auto recs = parse_csv(text, origin);
        check_header(recs, sweep_csv_header, origin);
        SweepTable t;
        for (std::size_t i = 1; i < recs.size(); ++i)
        {
            const auto &f = recs[i].fields;
            const auto line = recs[i].line;
            if (f.size() != 8)
                throw ParseError(origin + ": expected 8 fields, got " + std::to_string(f.size()), line);
            SweepRow r;
            try
            {
                r.model = parse_sweep_model(f[0]);
            }
            catch (const ConfigError &e)
            {
                throw ParseError(origin + ": " + e.what(), line);
            }
            r.material = f[1];
            r.frequency = parse_number(f[2], origin, line, "frequency_hz");
            r.theta_i = deg_to_rad(parse_number(f[3], origin, line, "theta_i_deg"));
            r.power_dbm = parse_number(f[4], origin, line, "power_dbm");
            r.envelope_dbm = parse_number(f[5], origin, line, "envelope_dbm");
            r.status = f[6];
            if (i == 1)
                t.convention_id = f[7];
            t.rows.push_back(std::move(r));
        }
        return t;
    }

    std::string table2_to_csv(const Table2 &table)
    {
        std::string out = std::string(table2_csv_header) + "\n";
        for (const auto &r : table.rows)
        {
            out += format_fixed6(rad_to_deg(r.theta_i)) + ",";
            out += csv_escape(r.material) + ",";
            out += format_fixed6(r.result.reflected_dbm) + ",";
            out += (r.result.scattered_dbm ? format_fixed6(*r.result.scattered_dbm) : "negligible") + ",";
            out += (r.result.difference_db ? format_fixed6(*r.result.difference_db) : "") + ",";
            out += csv_escape(table.convention_id) + ",";
            out += (r.paper_reflected_dbm ? format_fixed6(*r.paper_reflected_dbm) : "") + ",";
            out += (r.paper_scattered_dbm ? format_fixed6(*r.paper_scattered_dbm) : "") + ",";
            out += csv_escape(r.note) + "\n";
        }
        return out;
    }

    Table2 table2_from_csv(const std::string &text, const std::string &origin)
    {
        const auto recs = parse_csv(text, origin);
        check_header(recs, table2_csv_header, origin);
        Table2 t;
        auto opt = [&](const std::string &s, std::size_t line, const char *col) -> std::optional<double>
        {
            if (s.empty() || s == "negligible")
                return std::nullopt;
            return parse_number(s, origin, line, col);
        };
        for (std::size_t i = 1; i < recs.size(); ++i)
        {
            const auto &f = recs[i].fields;
            const auto line = recs[i].line;
            if (f.size() != 9)
                throw ParseError(origin + ": expected 9 fields, got " + std::to_string(f.size()), line);
            Table2Row r;
            r.theta_i = deg_to_rad(parse_number(f[0], origin, line, "theta_i_deg"));
            r.material = f[1];
            r.result.reflected_dbm = parse_number(f[2], origin, line, "reflected_dbm");
            r.result.scattered_dbm = opt(f[3], line, "scattered_dbm");
            r.result.difference_db = opt(f[4], line, "difference_db");
            if (i == 1)
                t.convention_id = f[5];
            r.paper_reflected_dbm = opt(f[6], line, "paper_value");
            r.paper_scattered_dbm = opt(f[7], line, "paper_scattered_value");
            r.note = f[8];
            t.rows.push_back(std::move(r));
        }
        return t;
    }

    std::string spec_to_json(const SweepSpec &spec)
    {
        json j;
        j["name"] = spec.name;
        j["convention_id"] = spec.convention_id;
        j["frequencies_hz"] = spec.frequencies;
        json thetas = json::array();
        for (double t : spec.theta_i_grid)
            thetas.push_back(rad_to_deg(t));
        j["theta_i_deg"] = thetas;
        json mats = json::array();
        for (const auto &m : spec.materials)
            mats.push_back({{"name", m.name},
                            {"eps_r", m.eps_r},
                            {"h_rms_m", m.h_rms},
                            {"l_c_m", m.l_c},
                            {"s_coeff", m.s_coeff},
                            {"alpha_r", m.alpha_r},
                            {"alpha_i", m.alpha_i},
                            {"lambda_mix", m.lambda_mix}});
        j["materials"] = mats;
        json models = json::array();
        for (auto m : spec.models)
            models.push_back(std::string(to_string(m)));
        j["models"] = models;
        j["physics"] = {{"speed_of_light", spec.cfg.speed_of_light},
                        {"loss_factor", std::string(to_string(spec.cfg.loss_factor))},
                        {"quadrature_rel_tol", spec.cfg.quadrature_rel_tol},
                        {"polarization", std::string(to_string(spec.polarization))},
                        {"lobe_normalization", std::string(to_string(spec.lobe_normalization))}};
        j["link"] = {{"d_t_m", spec.link.d_t},
                     {"d_r_m", spec.link.d_r},
                     {"scatterer_length_m", spec.link.scatterer_length},
                     {"scatterer_width_m", spec.link.scatterer_width},
                     {"monostatic", spec.link.monostatic}};
        j["tx"] = {{"p_t_w", spec.tx.p_t}, {"tx_antenna", antenna_json(spec.tx.tx)}, {"rx_antenna", antenna_json(spec.tx.rx)}};
        json rcs = {{"polarization", std::string(to_string(spec.rcs.polarization))},
                    {"slope_sigma", spec.rcs.slope_sigma.value_or(default_slope_sigma)},
                    {"patch_length_factor", spec.rcs.patch_length_factor}};
        if (spec.rcs.patch_half_length)
            rcs["patch_half_length_m"] = *spec.rcs.patch_half_length;
        j["rcs"] = rcs;
        return j.dump(2);
    }

    std::string read_text_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open '" + path + "' for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        if (in.bad())
            throw IoError("error reading '" + path + "'");
        return ss.str();
    }

    void write_text_file(const std::string &path, const std::string &content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + path + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw IoError("error writing '" + path + "'");
    }

    void export_sweep_csv(const SweepTable &table, const SweepSpec &spec, const std::string &path)
    {
        write_text_file(path, sweep_to_csv(table));
        write_sidecar(path, spec, "sweep", table.rows.size());
    }

    void export_table2_csv(const Table2 &table, const SweepSpec &spec, const std::string &path)
    {
        write_text_file(path, table2_to_csv(table));
        write_sidecar(path, spec, "table2", table.rows.size());
    }

    SweepTable import_sweep_csv(const std::string &path)
    {
        return sweep_from_csv(read_text_file(path), path);
    }

    Table2 import_table2_csv(const std::string &path)
    {
        return table2_from_csv(read_text_file(path), path);
    }
}
