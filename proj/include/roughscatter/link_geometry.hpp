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

namespace roughscatter
{
    // TX / scatterer / RX layout shared by the reflection, DS and RCS paths.
    struct LinkGeometry
    {
        double d_t = 50.0;              // TX to scatterer (m)
        double d_r = 50.0;              // scatterer to RX (m)
        double scatterer_length = 10.0; // l, along the plane of incidence (m)
        double scatterer_width = 1.0;   // w, RCS plate width (m)
        bool monostatic = false;        // TX and RX co-located; requires d_t == d_r

        void validate() const;
    };
}
