// SPDX-License-Identifier: Apache-2.0
//
// xlbt - near-field beam training simulator for extremely large-scale arrays
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xlbt/config_io.hpp"
#include "xlbt/format_util.hpp"

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace xlbt;

namespace {

std::filesystem::path temp_dir(const std::string& tag)
{
    auto dir = std::filesystem::temp_directory_path() / ("xlbt_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::string& path)
{
    std::ifstream is(path);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

bool bit_equal(double a, double b)
{
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// Minimal well-formedness scan: balanced tags, quoted attributes consumed.
bool xml_well_formed(const std::string& text)
{
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < text.size())
    {
        if (text[i] != '<')
        {
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0)
        {
            const auto end = text.find("-->", i);
            if (end == std::string::npos)
                return false;
            i = end + 3;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0)
        {
            const auto end = text.find("?>", i);
            if (end == std::string::npos)
                return false;
            i = end + 2;
            continue;
        }
        const auto end = text.find('>', i);
        if (end == std::string::npos)
            return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        const bool closing = !tag.empty() && tag[0] == '/';
        const bool self_closing = !tag.empty() && tag.back() == '/';
        if (closing)
            tag = tag.substr(1);
        if (self_closing)
            tag.pop_back();
        const auto space = tag.find_first_of(" \t\n");
        const std::string name = space == std::string::npos ? tag : tag.substr(0, space);
        if (name.empty())
            return false;
        if (closing)
        {
            if (stack.empty() || stack.back() != name)
                return false;
            stack.pop_back();
        }
        else if (!self_closing)
            stack.push_back(name);
        i = end + 1;
    }
    return stack.empty();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle)
{
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++count;
    return count;
}

} // namespace

TEST_CASE("config defaults match the reference setup")
{
    const auto cfg = parse_config_text("", "<empty>");
    CHECK(cfg.system.num_antennas == 256);
    CHECK(cfg.system.carrier_freq_hz == doctest::Approx(100e9));
    CHECK(cfg.system.ref_gain == doctest::Approx(std::pow(10.0, -7.2)).epsilon(1e-12));
    CHECK(cfg.system.noise_power_w == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(cfg.system.tx_power_w == doctest::Approx(1.0).epsilon(1e-12)); // 30 dBm
    CHECK(cfg.system.coherence_param == doctest::Approx(1.2));
    CHECK(cfg.system.gain_threshold == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(cfg.system.distance_samples == 6);
    CHECK(cfg.system.num_candidates == 3);
    CHECK(cfg.trials == 1000);
    CHECK(cfg.sweep_kind == "snr");
    CHECK(cfg.distance_points_m.front() == doctest::Approx(3.0));
    CHECK(cfg.distance_points_m.back() == doctest::Approx(103.0));
}

TEST_CASE("config parsing")
{
    SUBCASE("values, comments and blank lines")
    {
        const auto cfg = parse_config_text("# a comment\n"
                                           "num_antennas = 64   # trailing comment\n"
                                           "\n"
                                           "carrier_freq_ghz = 28\n"
                                           "tx_power_dbm = 20\n"
                                           "beta_db = -60\n"
                                           "seed = 42\n"
                                           "sweep = distance\n"
                                           "distance_points_m = 3:10:103\n"
                                           "schemes = exhaustive, two-phase:2\n",
                                           "test.cfg");
        CHECK(cfg.system.num_antennas == 64);
        CHECK(cfg.system.carrier_freq_hz == doctest::Approx(28e9));
        CHECK(cfg.system.tx_power_w == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(cfg.system.ref_gain == doctest::Approx(1e-6).epsilon(1e-12));
        CHECK(cfg.seed == 42);
        CHECK(cfg.distance_points_m.size() == 11);
        CHECK(cfg.schemes == std::vector<std::string>{"exhaustive", "two-phase:2"});
    }

    SUBCASE("unknown keys are rejected with location context")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("num_antennas = 8\nwat = 1\n", "bad.cfg"),
                             doctest::Contains("bad.cfg:2"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config_text("wat = 1\n", "bad.cfg"),
                             doctest::Contains("unknown key 'wat'"), ConfigError);
    }

    SUBCASE("validation errors name the field")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("num_antennas = -3\n", "bad.cfg"),
                             doctest::Contains("num_antennas"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config_text("trials = 0\n", "bad.cfg"),
                             doctest::Contains("trials"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config_text("sweep = sideways\n", "bad.cfg"),
                             doctest::Contains("sweep"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config_text("num_antennas = eight\n", "bad.cfg"),
                             doctest::Contains("not a number"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config_text("schemes = warp-drive\n", "bad.cfg"),
                             doctest::Contains("warp-drive"), ConfigError);
    }

    SUBCASE("missing file")
    {
        CHECK_THROWS_AS(load_config("/nonexistent/path/to.cfg"), ConfigError);
    }

    SUBCASE("malformed lines carry line numbers")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("num_antennas = 8\njust words\n", "f.cfg"),
                             doctest::Contains("f.cfg:2"), ConfigError);
    }
}

TEST_CASE("config hash is canonical")
{
    const auto a = parse_config_text("num_antennas = 64\nseed = 5\n", "a");
    const auto b = parse_config_text("seed = 5\n# reordered\nnum_antennas = 64\n", "b");
    CHECK(config_hash(a) == config_hash(b));

    const auto c = parse_config_text("num_antennas = 64\nseed = 6\n", "c");
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("default scheme sets")
{
    const auto cfg = parse_config_text("", "<empty>");
    CHECK(default_scheme_names(cfg, "distance").size() == 4);
    CHECK(default_scheme_names(cfg, "snr").size() == 6);

    auto k1 = parse_config_text("num_candidates_k = 1\n", "<k1>");
    CHECK(default_scheme_names(k1, "snr").size() == 5); // no duplicate two-phase:1

    auto chosen = cfg;
    chosen.schemes = {"far-field"};
    CHECK(default_scheme_names(chosen, "snr") == std::vector<std::string>{"far-field"});
}

TEST_CASE("results emission and round-trip")
{
    auto cfg = parse_config_text("num_antennas = 16\ndistance_samples_s = 4\ntrials = 25\n"
                                 "sweep = snr\nsnr_db_points = 0,10\n",
                                 "<test>");
    const auto schemes = parse_scheme_list(default_scheme_names(cfg, "snr"));
    const auto report =
        run_snr_sweep(cfg.system, cfg.snr_db_points, cfg.trials, schemes, cfg.seed);

    const auto dir = temp_dir("emit");
    const auto paths = emit_results(report, cfg, dir.string());
    REQUIRE(paths.size() == 3);

    SUBCASE("row cardinality is points x schemes")
    {
        const auto table = build_result_table(report);
        CHECK(table.rows.size() == 2 * schemes.size());
    }

    SUBCASE("CSV re-parse is bit-exact")
    {
        const auto table = build_result_table(report);
        const auto parsed = parse_results_csv(paths[0]);
        REQUIRE(parsed.rows.size() == table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i)
        {
            CHECK(bit_equal(parsed.rows[i].sweep_value, table.rows[i].sweep_value));
            CHECK(parsed.rows[i].scheme == table.rows[i].scheme);
            CHECK(bit_equal(parsed.rows[i].success_rate, table.rows[i].success_rate));
            CHECK(bit_equal(parsed.rows[i].rate_bps_hz, table.rows[i].rate_bps_hz));
            CHECK(parsed.rows[i].overhead == table.rows[i].overhead);
            CHECK(parsed.rows[i].trials == table.rows[i].trials);
            CHECK(parsed.rows[i].seed == table.rows[i].seed);
        }
    }

    SUBCASE("artifacts embed the config hash and seed")
    {
        const auto csv = read_file(paths[0]);
        CHECK(csv.find("# config_hash=") != std::string::npos);
        CHECK(csv.find("# seed=1") != std::string::npos);
        const auto svg = read_file(paths[1]);
        CHECK(svg.find("config_hash=") != std::string::npos);
    }

    SUBCASE("SVGs are well-formed with one polyline per scheme")
    {
        const auto rate_svg = read_file(paths[2]);
        CHECK(xml_well_formed(rate_svg));
        CHECK(count_occurrences(rate_svg, "<polyline") == schemes.size());

        // success chart drops the schemes that never select a codeword
        const auto success_svg = read_file(paths[1]);
        CHECK(xml_well_formed(success_svg));
        CHECK(count_occurrences(success_svg, "<polyline") == schemes.size() - 2);
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("pilot trace emission")
{
    auto cfg = parse_config_text("num_antennas = 8\ndistance_samples_s = 3\n", "<test>");
    const std::vector<SchemeSpec> schemes = {{SchemeKind::TwoPhase, 2},
                                             {SchemeKind::FarField, 0}};
    const auto result = run_single(cfg.system, {0.2, 3.0}, schemes, 3);

    const auto dir = temp_dir("trace");
    const auto path = emit_pilot_trace(result, cfg, dir.string());
    const auto text = read_file(path);

    long expected_rows = 0;
    for (const auto& [label, pilots] : result.traces)
        expected_rows += static_cast<long>(pilots.size());
    CHECK(count_occurrences(text, "\n") >= static_cast<std::size_t>(expected_rows));
    CHECK(text.find("scheme,pilot_index,angle_index,distance_index") != std::string::npos);
    CHECK(text.find("two_phase_k2") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("beam gain emission")
{
    auto cfg = parse_config_text("num_antennas = 32\n", "<test>");
    const auto codebook = build_far_codebook(cfg.system);

    GainProfile profile;
    profile.theta = 0.4;
    profile.distance_m = 2.0;
    profile.omegas = codebook.angles;
    profile.gains = beam_gain_profile(0.4, 2.0, codebook, cfg.system);

    const auto dir = temp_dir("beamgain");
    const auto paths = emit_beam_gains({profile}, cfg, dir.string());
    REQUIRE(paths.size() == 2);

    const auto csv = read_file(paths[0]);
    CHECK(count_occurrences(csv, "\n") == 32 + 4); // rows + 3 comments + header
    CHECK(xml_well_formed(read_file(paths[1])));
    std::filesystem::remove_all(dir);
}

TEST_CASE("shortest round-trip double formatting")
{
    for (double v : {0.1, 1.0 / 3.0, 1615.2508018693741, 1e-300, -0.0, 5.0})
        CHECK(bit_equal(parse_double(format_double(v)), v));
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isnan(parse_double("nan")));
    CHECK_THROWS_AS(parse_double("12,5"), std::invalid_argument);
}
