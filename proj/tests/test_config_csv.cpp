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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

using namespace roughscatter;
namespace fs = std::filesystem;

namespace
{
    fs::path tmp_dir()
    {
        const fs::path p = fs::path(ROUGHSCATTER_TEST_TMP) / "config_csv";
        fs::create_directories(p);
        return p;
    }

    std::size_t line_count(const std::string &s)
    {
        std::size_t n = 0;
        for (char c : s)
            n += c == '\n';
        return n;
    }
}

TEST_CASE("exemplar materials round-trip bit-exactly")
{
    const std::vector<Material> ms{table1_smooth(), table1_intermediate(), table1_rough()};
    const auto text = materials_to_string(ms);
    const auto back = parse_materials(text);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(back[i] == ms[i]);
    CHECK(materials_to_string(back) == text);

    const auto shipped = load_materials(data_dir() + "/materials/paper_table1.cfg");
    REQUIRE(shipped.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(shipped[i] == ms[i]);

    const auto path = (tmp_dir() / "mats.cfg").string();
    save_materials(path, ms);
    CHECK(load_materials(path) == ms);
}

TEST_CASE("awkward material values survive the micrometre writer")
{
    Material m = table1_rough();
    m.name = "odd";
    for (double h : {1e-7, 3.3e-5, 0.1 + 0.2, 1.0 / 3.0 * 1e-4, 123.456e-6})
    {
        m.h_rms = h;
        m.l_c = h * 7.1;
        const auto back = parse_materials(materials_to_string({m}));
        CHECK(back.at(0) == m);
    }
}

TEST_CASE("material document errors")
{
    CHECK_THROWS_AS(parse_materials("name: a\neps_r: 2\nh_rms_um: 1\nl_c_um: 1\ns_coeff: 0.1\nalpha_r: 1\ncolour: red\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_materials("name: a\neps_r: 2\n"), ParseError);
    const std::string one = "name: a\neps_r: 2\nh_rms_um: 1\nl_c_um: 1\ns_coeff: 0.1\nalpha_r: 1\n";
    CHECK_THROWS_AS(parse_materials(one + "---\n" + one), ParseError);
    try
    {
        parse_materials("name: a\neps_r: [1\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line() > 0);
    }
    CHECK_THROWS_AS(parse_materials(one + "eps_r_extra: 1\n"), ParseError);
    CHECK_THROWS(parse_materials("name: a\neps_r: 0.5\nh_rms_um: 1\nl_c_um: 1\ns_coeff: 0.1\nalpha_r: 1\n"));
    const auto m = parse_materials(one).at(0);
    CHECK(m.alpha_i == m.alpha_r);
    CHECK(m.lambda_mix == 1.0);
}

TEST_CASE("material lookup")
{
    const std::vector<Material> ms{table1_smooth(), table1_intermediate(), table1_rough()};
    CHECK(find_material(ms, "Material 3 - Rough").eps_r == 2.0);
    CHECK(find_material(ms, "material 1 - smooth").eps_r == 16.0);
    CHECK(find_material(ms, "rough").eps_r == 2.0);
    CHECK_THROWS_AS(find_material(ms, "material"), ConfigError);
    CHECK_THROWS_AS(find_material(ms, "granite"), ConfigError);
}

TEST_CASE("scenario parsing")
{
    const std::string base = R"(
name: t
frequencies_ghz: {start: 100, stop: 130, step: 10}
theta_i_deg: [10, 20]
models: [reflection, ds_specular]
physics: {speed_of_light: 3.0e8}
tx: {p_t_dbm: 30, aperture_cm2: 2}
)";
    const auto sc = parse_scenario(base, ".");
    const auto &s = sc.sweep;
    CHECK(s.name == "t");
    CHECK(s.convention_id == "t");
    REQUIRE(s.frequencies.size() == 4);
    CHECK(s.frequencies.back() == doctest::Approx(130e9).epsilon(1e-15));
    CHECK(s.theta_i_grid[1] == doctest::Approx(deg_to_rad(20)).epsilon(1e-15));
    CHECK(s.materials.size() == 3);
    CHECK(s.tx.p_t == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.tx.rx.aperture == doctest::Approx(2e-4).epsilon(1e-15));
    CHECK(s.cfg.speed_of_light == 3.0e8);

    SUBCASE("overrides")
    {
        const auto o = parse_scenario(base, ".", {{"physics.loss_factor", "boithias"},
                                                  {"theta_i_deg", "45"},
                                                  {"physics.speed_of_light", "null"},
                                                  {"materials_select", "rough"}});
        CHECK(o.sweep.cfg.loss_factor == LossFactorVariant::boithias);
        CHECK(o.sweep.theta_i_grid.size() == 1);
        CHECK(o.sweep.cfg.speed_of_light == 299792458.0);
        REQUIRE(o.sweep.materials.size() == 1);
        CHECK(o.sweep.materials[0].name == "Material 3 - Rough");
    }

    SUBCASE("errors")
    {
        CHECK_THROWS_AS(parse_scenario(base + "bogus: 1\n", "."), ConfigError);
        CHECK_THROWS_AS(parse_scenario(base, ".", {{"physics.polarization", "circular"}}), ConfigError);
        CHECK_THROWS_AS(parse_scenario(base, ".", {{"tx.p_t_w", "3"}}), ConfigError);
        CHECK_THROWS_AS(parse_scenario(base, ".", {{"frequencies_ghz", "-1"}}), ConfigError);
        CHECK_THROWS_AS(parse_scenario(base, ".", {{"models", "[ds_backscatter]"}}), ConfigError);
        CHECK_THROWS_AS(parse_scenario(base, ".", {{"materials_file", "nowhere.cfg"}}), IoError);
        CHECK_THROWS_AS(parse_scenario("name: [unclosed\n", "."), ParseError);
    }
}

TEST_CASE("shipped presets load and validate")
{
    for (const char *p : {"paper-repro", "table2", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "drywall142"})
    {
        CAPTURE(p);
        CHECK_NOTHROW(load_preset(p));
    }
    const auto t2 = load_preset("table2").sweep;
    CHECK(t2.link.d_t == 50.0);
    CHECK(t2.link.d_r == 50.0);
    CHECK(t2.cfg.speed_of_light == 3.0e8);
    CHECK(t2.polarization == Polarization::perpendicular);
    CHECK(t2.cfg.loss_factor == LossFactorVariant::ament);
    CHECK(t2.tx.tx.mode == GainMode::constant_aperture);
    CHECK(t2.tx.tx.aperture == doctest::Approx(5e-4).epsilon(1e-15));
    CHECK(t2.frequencies == std::vector<double>{500e9});

    const auto dw = load_preset("drywall142");
    CHECK(dw.sweep.materials.at(0).eps_r == 3.0);
    CHECK(dw.sweep.tx.tx.mode == GainMode::fixed_gain);
    CHECK(10.0 * std::log10(dw.sweep.tx.tx.gain) == doctest::Approx(27.0).epsilon(1e-12));
    CHECK(watt_to_dbm(dw.sweep.tx.p_t) == doctest::Approx(-2.35).epsilon(1e-12));
    CHECK(dw.profile.theta_s_grid.size() == 17);
    CHECK(dw.profile.hpbw_deg == 8.0);
    CHECK_FALSE(dw.profile.beam_convolution);

    CHECK_THROWS_AS(load_preset("no-such-preset"), IoError);
}

TEST_CASE("csv primitives")
{
    const auto recs = parse_csv("a,\"b,c\",\"d\"\"e\"\n1,2,3\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].fields[1] == "b,c");
    CHECK(recs[0].fields[2] == "d\"e");
    CHECK(recs[1].line == 2);
    CHECK_THROWS_AS(parse_csv("a,\"b\n"), ParseError);
    CHECK(csv_escape("x,y") == "\"x,y\"");
    CHECK(csv_escape("plain") == "plain");
    CHECK(format_fixed6(-0.0000001) == "0.000000");
    CHECK(format_fixed6(NAN) == "");
    CHECK(format_fixed6(-INFINITY) == "-inf");
    CHECK(format_fixed6(1.5) == "1.500000");
}

TEST_CASE("sweep csv round trip and export")
{
    SweepTable empty;
    empty.convention_id = "x";
    CHECK(sweep_to_csv(empty) == std::string(sweep_csv_header) + "\n");

    auto spec = load_preset("fig5").sweep;
    spec.theta_i_grid.resize(5);
    const auto t = run_sweep(spec, 1);
    const auto csv = sweep_to_csv(t);
    const auto back = sweep_from_csv(csv);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        CHECK(back.rows[i].model == t.rows[i].model);
        CHECK(back.rows[i].material == t.rows[i].material);
        CHECK(back.rows[i].power_dbm == doctest::Approx(t.rows[i].power_dbm).epsilon(1e-6));
    }
    CHECK(sweep_to_csv(back) == csv);

    const auto path = (tmp_dir() / "sweep.csv").string();
    export_sweep_csv(t, spec, path);
    CHECK(read_text_file(path) == csv);
    const auto meta = read_text_file(path + ".meta.json");
    CHECK(meta.find("\"generated_utc\"") != std::string::npos);
    CHECK(meta.find("\"convention_id\"") != std::string::npos);
    CHECK(import_sweep_csv(path).rows.size() == t.rows.size());

    CHECK_THROWS_AS(sweep_from_csv("wrong,header\n"), ParseError);
    CHECK_THROWS_AS(read_text_file((tmp_dir() / "absent.csv").string()), IoError);
}

TEST_CASE("table2 csv")
{
    const auto spec = load_preset("table2").sweep;
    const auto t = generate_table2(spec);
    const auto csv = table2_to_csv(t);
    CHECK(line_count(csv) == 16);
    CHECK(csv.rfind(table2_csv_header, 0) == 0);
    CHECK(csv.find("negligible") != std::string::npos);
    const auto back = table2_from_csv(csv);
    REQUIRE(back.rows.size() == 15);
    CHECK(table2_to_csv(back) == csv);

    const auto path = (tmp_dir() / "table2.csv").string();
    export_table2_csv(t, spec, path);
    CHECK(import_table2_csv(path).rows.size() == 15);
}

TEST_CASE("profile files")
{
    std::string csv = "theta_s_deg,power_dbm\n";
    for (int d = 80; d >= -80; d -= 10)
        csv += std::to_string(d) + "," + std::to_string(-40.0 - std::abs(d - 30) / 10.0) + "\n";
    const std::string meta = "# drywall\ntheta_i_deg=30\nfrequency_ghz=142\nradius_m=1.5\n";
    const auto p = parse_profile(csv, meta);
    REQUIRE(p.samples.size() == 17);
    CHECK(p.samples.front().theta_s == doctest::Approx(deg_to_rad(-80)).epsilon(1e-15));
    for (std::size_t i = 1; i < p.samples.size(); ++i)
        CHECK(p.samples[i].theta_s > p.samples[i - 1].theta_s);
    CHECK(p.meta.frequency == 142e9);
    CHECK_FALSE(p.meta.tx_power_dbm.has_value());

    try
    {
        parse_profile("theta_s_deg,power_dbm\n10,-40\n20,-41\n10,-42\n", meta);
        FAIL("expected duplicate rejection");
    }
    catch (const ParseError &e)
    {
        const std::string w = e.what();
        CHECK(w.find("lines 2 and 4") != std::string::npos);
    }
    try
    {
        parse_profile("theta_s_deg,power_dbm\n10,-40\n20,abc\n", meta);
        FAIL("expected malformed row rejection");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_profile("theta_s_deg,power_dbm\n95,-40\n", meta), DomainError);
    CHECK_THROWS_AS(parse_profile("angle,power\n10,-40\n", meta), ParseError);
    CHECK_THROWS_AS(parse_profile(csv, "frequency_ghz=142\n"), ParseError);
    CHECK_THROWS_AS(parse_profile(csv, "theta_i_deg=30\nnoise=1\n"), ParseError);

    const auto path = (tmp_dir() / "profile.csv").string();
    save_profile(path, p);
    const auto back = load_profile(path);
    CHECK(back.samples.size() == 17);
    CHECK(back.theta_i == doctest::Approx(p.theta_i).epsilon(1e-12));
    CHECK(back.meta.radius_m == 1.5);
    CHECK_THROWS_AS(load_profile((tmp_dir() / "missing.csv").string()), IoError);
}
