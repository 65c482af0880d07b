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

#include <cmath>
#include <numbers>

// Unit conversions used at the library boundary. All internal quantities are
// SI (m, Hz, W, rad); dB helpers operate on power ratios.
namespace roughscatter
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double half_pi = std::numbers::pi / 2.0;

    constexpr double deg_to_rad(double deg) noexcept { return deg * pi / 180.0; }
    constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / pi; }

    inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }
    inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
    inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
    inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    constexpr double um_to_m(double um) noexcept { return um * 1e-6; }
    constexpr double m_to_um(double m) noexcept { return m * 1e6; }
}
