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

#include "xlbt/array_channel.hpp"
#include "xlbt/codebook.hpp"
#include "xlbt/rng.hpp"
#include "xlbt/training.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xlbt {

enum class SchemeKind
{
    PerfectCsi,
    PolarExhaustive,
    TwoPhase,
    FarField,
    LsEstimation,
};

/// One training scheme to evaluate. `num_candidates` only applies to
/// TwoPhase; 0 means "use the config value".
struct SchemeSpec
{
    SchemeKind kind = SchemeKind::TwoPhase;
    int num_candidates = 0;

    std::string label(const SystemConfig& cfg) const;
    friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

/// Accepts: perfect-csi, exhaustive (or polar-exhaustive), two-phase,
/// two-phase:K, far-field, ls (or ls-estimation). Throws on anything else.
SchemeSpec parse_scheme(const std::string& text);

std::vector<SchemeSpec> parse_scheme_list(const std::vector<std::string>& names);

/// Reference SNR = P*beta*N / (r^2 * sigma^2), linear.
double reference_snr(const SystemConfig& cfg, double distance_m);

/// Transmit power that achieves a given linear reference SNR at distance r.
double tx_power_for_snr(const SystemConfig& cfg, double snr_linear, double distance_m);

/// R = log2(1 + P*beta*N*|b^H(theta,r) v|^2 / (r^2 sigma^2)) against the
/// true near-field steering vector.
double achievable_rate(const UserLocation& truth, const ComplexVector& beamformer,
                       const SystemConfig& cfg);

/// Closed interval for random draws; lo == hi pins the value.
struct RangeSpec
{
    double lo = 0.0;
    double hi = 0.0;

    static RangeSpec fixed(double v) { return {v, v}; }
    bool is_fixed() const { return lo == hi; }
};

/// Spatial-angle distribution: uniform over [-1, 1] unless fixed.
struct AngleSpec
{
    bool is_uniform = true;
    double value = 0.0;

    static AngleSpec uniform() { return {true, 0.0}; }
    static AngleSpec fixed(double theta) { return {false, theta}; }
};

UserLocation draw_user(RandomStream& rng, const RangeSpec& distance, const AngleSpec& angle);

/// Per-trial outcome of every scheme, kept compact (no beamformers).
struct TrialRecord
{
    UserLocation truth;
    CodewordId oracle;

    struct SchemeResult
    {
        std::optional<CodewordId> selected;
        long pilots_used = 0;
        double rate_bps_hz = 0.0;
        bool success = false;
    };
    std::vector<SchemeResult> results; // parallel to the scheme list
};

struct SchemeAggregate
{
    std::string scheme;
    double success_rate = 0.0; // NaN when the scheme selects no codeword
    double mean_rate_bps_hz = 0.0;
    long overhead = 0;
};

struct SweepPoint
{
    double sweep_value = 0.0;
    std::vector<SchemeAggregate> per_scheme;
    std::vector<TrialRecord> trials;
};

struct SweepReport
{
    std::string sweep_kind; // "snr" | "distance" | "single"
    std::vector<std::string> scheme_labels;
    std::vector<SweepPoint> points;
    std::uint64_t seed = 0;
    long trials_per_point = 0;
    std::vector<std::pair<std::string, std::string>> metadata;
};

struct SweepOptions
{
    /// SNR sweeps fix the user distance and invert the reference-SNR
    /// formula for P at each point.
    double snr_fixed_distance_m = 10.0;
    AngleSpec angle = AngleSpec::uniform();
    int threads = 1; // 0 = hardware concurrency
    bool keep_trials = true;
    /// Prebuilt codebooks (e.g. imported from CSV); built on demand if null.
    const FarFieldCodebook* farfield = nullptr;
    const PolarCodebook* polar = nullptr;
    /// Progress callback: (completed points, total points).
    std::function<void(int, int)> progress;
};

/// Monte Carlo sweep over reference-SNR points (dB).
SweepReport run_snr_sweep(const SystemConfig& cfg, const std::vector<double>& snr_db_points,
                          long trials, const std::vector<SchemeSpec>& schemes, std::uint64_t seed,
                          const SweepOptions& opts = {});

/// Monte Carlo sweep over user distances (m) at fixed transmit power.
SweepReport run_distance_sweep(const SystemConfig& cfg, const std::vector<double>& distances_m,
                               long trials, const std::vector<SchemeSpec>& schemes,
                               std::uint64_t seed, const SweepOptions& opts = {});

/// One location, one trial per scheme, with full pilot traces.
struct SingleRunResult
{
    SweepReport report;
    std::vector<std::pair<std::string, std::vector<ReceivedPilot>>> traces;
};

SingleRunResult run_single(const SystemConfig& cfg, const UserLocation& loc,
                           const std::vector<SchemeSpec>& schemes, std::uint64_t seed,
                           const SweepOptions& opts = {});

/// Recompute a point's success rate from its trial records (index into the
/// scheme list). Returns NaN for schemes that select no codeword.
double recompute_success_rate(const SweepPoint& point, std::size_t scheme_index);

/// Noiseless far-field beam gains |u^H w_n| over a codebook, where u is the
/// near-field steering vector at (theta, r), or the planar-wavefront vector
/// when r is +infinity.
std::vector<double> beam_gain_profile(double theta, double distance_m,
                                      const FarFieldCodebook& codebook, const SystemConfig& cfg);

/// Same against arbitrary probe angles omega (w(omega) = far_steering).
std::vector<double> beam_gain_profile(double theta, double distance_m,
                                      const std::vector<double>& omegas, const SystemConfig& cfg);

} // namespace xlbt
