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
#include "roughscatter/link_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace roughscatter
{
    enum class ScatterDirection
    {
        specular,   // psi = 0, receiver on the specular ray
        backscatter // theta_s = -theta_i, receiver co-located with the transmitter
    };

    struct LabeledValue
    {
        std::string label;
        double value = 0.0;
    };

    struct ScatterResult
    {
        double reflected_dbm = 0.0;
        std::optional<double> scattered_dbm; // empty when scattering vanishes (grazing)
        std::optional<double> difference_db; // reflected - scattered, when both are finite
        std::vector<LabeledValue> components;

        bool scattered_negligible() const { return !scattered_dbm.has_value(); }
    };

    // Specular path of length d_t + d_r:
    // P_r = P_t G_t G_r lambda^2 |Gamma_rough|^2 / ((4 pi)^2 d^2), in dBm.
    double reflected_received_power(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                    const TxParams &tx, const PhysicsConfig &cfg);

    // Single-lobe DS power in dBm; -inf when the lobe vanishes at grazing.
    double scattered_received_power_ds(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                       const TxParams &tx, const PhysicsConfig &cfg,
                                       ScatterDirection dir = ScatterDirection::specular,
                                       LobeNormalization norm = LobeNormalization::literal);

    ScatterResult compare_scatter_vs_reflection(const Material &m, const IncidentWave &wave, const LinkGeometry &link,
                                                const TxParams &tx, const PhysicsConfig &cfg,
                                                LobeNormalization norm = LobeNormalization::literal);
}
