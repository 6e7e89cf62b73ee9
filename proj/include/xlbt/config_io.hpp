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

#pragma once

#include "xlbt/simulation.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xlbt {

/// Raised on malformed config files, with file/line/field context.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Full experiment description: system parameters plus sweep selection.
/// dB-valued inputs are converted to linear at load; everything here is SI.
struct ExperimentConfig
{
    SystemConfig system;

    std::string sweep_kind = "snr"; // snr | distance | single
    std::vector<double> snr_db_points = {-10, -5, 0, 5, 10, 15, 20};
    std::vector<double> distance_points_m = {3, 13, 23, 33, 43, 53, 63, 73, 83, 93, 103};
    long trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> schemes; // empty = per-sweep default set
    std::string output_dir = ".";
    std::string codebook_import;
    std::string codebook_export;
    double snr_sweep_distance_m = 10.0;
    double single_theta = 0.0;
    double single_distance_m = 10.0;
    int threads = 0; // 0 = auto

    void validate() const; // throws ConfigError naming the field
};

/// Flat `key = value` text, '#' comments, unknown keys rejected.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

/// Scheme list for a sweep kind when the config leaves `schemes` empty.
std::vector<std::string> default_scheme_names(const ExperimentConfig& cfg,
                                              const std::string& sweep_kind);

/// Canonical serialization of the effective config (sorted keys, linear
/// units, shortest round-trip numbers); basis of the config hash.
std::string canonical_config_text(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Flat result table mirrored into results.csv.
struct ResultRow
{
    double sweep_value = 0.0;
    std::string scheme;
    double success_rate = 0.0;
    double rate_bps_hz = 0.0;
    long overhead = 0;
    long trials = 0;
    std::uint64_t seed = 0;
};

struct ResultTable
{
    static const char* header(); // fixed column schema
    std::vector<ResultRow> rows;
};

ResultTable build_result_table(const SweepReport& report);

/// Writes results.csv plus one SVG per metric into `outdir`; returns the
/// paths written. Every artifact embeds the config hash and seed.
std::vector<std::string> emit_results(const SweepReport& report, const ExperimentConfig& cfg,
                                      const std::string& outdir);

ResultTable parse_results_csv(const std::string& path);

/// Pilot trace CSV for the `single` subcommand.
std::string emit_pilot_trace(const SingleRunResult& result, const ExperimentConfig& cfg,
                             const std::string& outdir);

/// Beam-gain profile rows (theta, r, omega, gain) plus a chart.
struct GainProfile
{
    double theta = 0.0;
    double distance_m = 0.0; // +inf = planar-wavefront source
    std::vector<double> omegas;
    std::vector<double> gains;
};

std::vector<std::string> emit_beam_gains(const std::vector<GainProfile>& profiles,
                                         const ExperimentConfig& cfg, const std::string& outdir);

} // namespace xlbt
