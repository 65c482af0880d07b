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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace roughscatter
{
    struct ProfileSample
    {
        double theta_s = 0.0;   // rad
        double power_dbm = 0.0; // NaN marks a sample the model could not evaluate
    };

    struct ProfileMetadata
    {
        double frequency = 0.0; // Hz, 0 = unknown
        std::optional<double> tx_power_dbm;
        std::optional<double> antenna_gain_dbi;
        double hpbw_deg = 0.0; // 0 = unknown
        double radius_m = 0.0; // 0 = unknown
        std::string material_name;
    };

    struct AngularPowerProfile
    {
        double theta_i = 0.0; // rad
        std::vector<ProfileSample> samples;
        ProfileMetadata meta;

        // Sorted, unique, within [-pi/2, pi/2]. Throws DomainError.
        void validate() const;
    };

    // CSV with header "theta_s_deg,power_dbm" plus a key=value sidecar at
    // csv_path + ".meta" (keys: theta_i_deg, frequency_ghz, tx_power_dbm,
    // antenna_gain_dbi, hpbw_deg, radius_m, material_name; '#' starts a comment).
    // Samples come back sorted; duplicates are rejected citing both lines.
    AngularPowerProfile parse_profile(const std::string &csv_text, const std::string &meta_text,
                                      const std::string &origin = "<string>");
    AngularPowerProfile load_profile(const std::string &csv_path);
    std::string profile_to_csv(const AngularPowerProfile &p);
    std::string profile_meta_to_string(const AngularPowerProfile &p);
    void save_profile(const std::string &csv_path, const AngularPowerProfile &p);

    struct PredictOptions
    {
        LobeNormalization norm = LobeNormalization::literal;
        bool include_reflection = true; // power-sum rough reflection at theta_s == theta_i
        double beam_hpbw_deg = 0.0;     // > 0 convolves the scattered term with a Gaussian beam
    };

    // Everything besides the material that the forward model needs.
    struct ProfileContext
    {
        LinkGeometry link; // d_t, d_r and scatterer_length are used
        TxParams tx;
        PhysicsConfig cfg;
        Polarization polarization = Polarization::perpendicular;
        PredictOptions predict;
    };

    // Profile radius, TX power and gain (both ends, fixed-gain mode) and HPBW
    // replace the context values when the metadata provides them.
    ProfileContext apply_profile_metadata(ProfileContext ctx, const ProfileMetadata &meta);

    AngularPowerProfile predict_profile(const Material &m, const IncidentWave &wave, const ProfileContext &ctx,
                                        const std::vector<double> &theta_s_grid);

    struct FitBounds
    {
        double lambda_min = 0.0, lambda_max = 1.0;
        double alpha_min = 1.0, alpha_max = 1000.0;
        double s_min = 1e-6, s_max = 1.0;
    };

    struct FitOptions
    {
        int lambda_steps = 21; // grid nodes on [lambda_min, lambda_max]
        int alpha_steps = 25;  // log-spaced nodes on [alpha_min, alpha_max]
        double tolerance_db2 = 1e-6;
        int max_sweeps = 20000;
        unsigned threads = 0; // grid-search workers; 0 = hardware concurrency
        // rss increase below this when an exponent is doubled or halved marks
        // the exponent as not identifiable from the data
        double identifiability_db2 = 1e-3;
    };

    struct FitResult
    {
        double lambda_mix = 1.0;
        double alpha_r = 1.0;
        double alpha_i = 1.0;
        double s_coeff = 1.0;
        double rss_db2 = 0.0;
        double peak_error_db = 0.0; // NaN when no sample sits at the specular angle
        std::size_t samples_used = 0;
        bool alpha_r_identifiable = true;
        bool alpha_i_identifiable = true;
        bool degenerate = false; // profile carries no angular structure
        int sweeps = 0;
    };

    // Objective: sum of squared dB residuals. `skeleton` supplies eps_r, h_rms
    // and l_c; its lobe parameters and S are ignored.
    FitResult fit_dual_lobe(const AngularPowerProfile &profile, const Material &skeleton, const ProfileContext &ctx,
                            const FitBounds &bounds = {}, const FitOptions &opt = {});

    // Objective value for fixed parameters, using the fitter's forward model.
    double profile_rss_db2(const AngularPowerProfile &profile, const Material &m, const ProfileContext &ctx);

    // Adds independent N(0, sigma_db^2) noise to every sample; deterministic per seed.
    AngularPowerProfile add_gaussian_noise(const AngularPowerProfile &p, double sigma_db, std::uint64_t seed);
}
