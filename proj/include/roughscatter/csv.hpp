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

#pragma once

#include "roughscatter/sweep.hpp"

#include <cstddef>
#include <string>
#include <vector>

// RFC 4180 CSV with LF line endings. Power and angle columns use fixed
// 6-decimal formatting, so a table survives export -> import -> export
// byte-for-byte and import(export(t)) equals t rounded to 6 decimals.
namespace roughscatter
{
    struct CsvRecord
    {
        std::vector<std::string> fields;
        std::size_t line = 0; // 1-based line where the record starts
    };

    // Throws ParseError with a line number on unterminated quotes.
    std::vector<CsvRecord> parse_csv(const std::string &text, const std::string &origin = "<string>");
    std::string csv_escape(const std::string &field);
    std::string format_fixed6(double x);

    inline constexpr const char *sweep_csv_header =
        "model,material,frequency_hz,theta_i_deg,power_dbm,envelope_dbm,status,convention_id";
    inline constexpr const char *table2_csv_header =
        "theta_i_deg,material,reflected_dbm,scattered_dbm,difference_db,convention_id,paper_value,"
        "paper_scattered_value,note";

    std::string sweep_to_csv(const SweepTable &table);
    SweepTable sweep_from_csv(const std::string &text, const std::string &origin = "<string>");

    std::string table2_to_csv(const Table2 &table);
    Table2 table2_from_csv(const std::string &text, const std::string &origin = "<string>");

    // Effective configuration as pretty-printed JSON.
    std::string spec_to_json(const SweepSpec &spec);

    // Writes `path` and the sidecar `path + ".meta.json"` (spec, convention id,
    // row count, UTC timestamp). Throws IoError naming the path.
    void export_sweep_csv(const SweepTable &table, const SweepSpec &spec, const std::string &path);
    void export_table2_csv(const Table2 &table, const SweepSpec &spec, const std::string &path);
    SweepTable import_sweep_csv(const std::string &path);
    Table2 import_table2_csv(const std::string &path);

    std::string read_text_file(const std::string &path);
    void write_text_file(const std::string &path, const std::string &content);
}
