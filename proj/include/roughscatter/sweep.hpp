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

#include "roughscatter/ds_model.hpp"
#include "roughscatter/em_core.hpp"
#include "roughscatter/link_budget.hpp"
#include "roughscatter/link_geometry.hpp"
#include "roughscatter/rcs_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roughscatter
{
    enum class SweepModel
    {
        ds_backscatter, // single-lobe DS, monostatic (psi = -2 theta_i)
        rcs_monostatic, // two-scale RCS through the monostatic radar equation
        reflection,     // rough-surface specular reflection
        ds_specular     // single-lobe DS on the specular ray (psi = 0)
    };

    std::string_view to_string(SweepModel m);
    SweepModel parse_sweep_model(std::string_view s);

    struct SweepSpec
    {
        std::string name;
        std::string convention_id;
        std::vector<double> frequencies;  // Hz
        std::vector<double> theta_i_grid; // rad
        std::vector<Material> materials;
        std::vector<SweepModel> models;
        LinkGeometry link;
        TxParams tx;
        PhysicsConfig cfg;
        Polarization polarization = Polarization::perpendicular;
        LobeNormalization lobe_normalization = LobeNormalization::literal;
        RcsOptions rcs;

        // Throws ConfigError describing the first problem found.
        void validate() const;
    };

    struct SweepRow
    {
        SweepModel model = SweepModel::reflection;
        std::string material;
        double frequency = 0.0; // Hz
        double theta_i = 0.0;   // rad
        double power_dbm = 0.0;
        // Same as power_dbm except for rcs_monostatic, where the plate term uses
        // the sinc envelope instead of the oscillating sinc.
        double envelope_dbm = 0.0;
        std::string status = "ok"; // "ok", "singular: ..." or "error: ..."

        bool ok() const { return status == "ok"; }
    };

    struct SweepTable
    {
        std::string convention_id;
        std::vector<SweepRow> rows;
    };

    // One row per (model, material, frequency, theta_i) in that nesting order.
    // threads == 0 uses the hardware concurrency. Output does not depend on the
    // thread count.
    SweepTable run_sweep(const SweepSpec &spec, unsigned threads = 0);

    // Evaluates one grid point; throws on singular evaluations.
    SweepRow evaluate_point(const SweepSpec &spec, SweepModel model, const Material &m, double frequency,
                            double theta_i);

    struct Table2Row
    {
        double theta_i = 0.0; // rad (the "0 deg" row is evaluated at 1 deg)
        std::string material;
        ScatterResult result;
        std::optional<double> paper_reflected_dbm;
        std::optional<double> paper_scattered_dbm;
        std::string note;
    };

    struct Table2
    {
        std::string convention_id;
        std::vector<Table2Row> rows;
    };

    // Rows ordered by theta_i, then material, matching the published layout.
    // Reference values are attached to rows whose material equals one of the
    // three exemplar presets.
    Table2 generate_table2(const SweepSpec &preset);

    // Published 500 GHz reference entries, indexed by material position
    // (0 smooth, 1 intermediate, 2 rough) and incidence angle in degrees
    // (1, 30, 45, 60, 90). Empty for unknown keys or "negligible" cells.
    std::optional<double> published_reflected_dbm(std::size_t material_index, double theta_i_deg);
    std::optional<double> published_scattered_dbm(std::size_t material_index, double theta_i_deg);
}
