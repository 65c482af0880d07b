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

#include <string>
#include <utility>
#include <vector>

// Config files are YAML. Material files hold one document per material;
// scenario files hold a single mapping (see presets/ for examples).
namespace roughscatter
{
    std::vector<Material> parse_materials(const std::string &text, const std::string &origin = "<string>");
    std::vector<Material> load_materials(const std::string &path);

    // Writes lengths in micrometres using the shortest decimal that converts
    // back to the identical double, so load(save(x)) == x.
    std::string materials_to_string(const std::vector<Material> &materials);
    void save_materials(const std::string &path, const std::vector<Material> &materials);

    // Exact name, then case-insensitive name, then a unique case-insensitive
    // substring ("rough" finds "Material 3 - Rough"). Throws ConfigError.
    const Material &find_material(const std::vector<Material> &materials, const std::string &name);

    // Settings used by the profile prediction and fitting workflow.
    struct ProfileSettings
    {
        std::vector<double> theta_s_grid; // rad
        double hpbw_deg = 0.0;            // antenna half-power beamwidth, 0 = unknown
        bool beam_convolution = false;
    };

    struct Scenario
    {
        SweepSpec sweep;
        ProfileSettings profile;
        std::string source; // file path, or "<string>"
    };

    // "section.key=value" overrides, applied to the YAML tree before it is
    // interpreted. The value is parsed as YAML, so lists are accepted.
    using Overrides = std::vector<std::pair<std::string, std::string>>;

    Scenario parse_scenario(const std::string &text, const std::string &base_dir, const Overrides &overrides = {},
                            const std::string &origin = "<string>");
    Scenario load_scenario(const std::string &path, const Overrides &overrides = {});

    // Directory holding presets/ and materials/. ROUGHSCATTER_DATA_DIR in the
    // environment takes precedence over the build-time default.
    std::string data_dir();
    // A preset name ("table2") or a path to a scenario file.
    std::string resolve_preset(const std::string &name_or_path);
    Scenario load_preset(const std::string &name_or_path, const Overrides &overrides = {});

    // Shortest round-trip decimal form of a double.
    std::string format_double(double x);
}
