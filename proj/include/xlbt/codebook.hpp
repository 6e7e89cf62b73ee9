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

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace xlbt {

/// Identifies one codeword: angle index n in 1..N (matching the grid
/// convention theta_n = (2n-N-1)/N) and distance index s in 0..S_n-1,
/// where s = 0 is the far-field (infinite distance) layer.
struct CodewordId
{
    int angle_index = 0;
    int distance_index = 0;

    friend bool operator==(const CodewordId&, const CodewordId&) = default;
    friend auto operator<=>(const CodewordId&, const CodewordId&) = default;
};

/// DFT-style angle-domain codebook: N orthogonal beams on the uniform grid.
struct FarFieldCodebook
{
    std::vector<double> angles;          // theta_n, n = 1..N
    std::vector<ComplexVector> codewords; // w_n = far_steering(theta_n)

    int size() const { return static_cast<int>(codewords.size()); }
};

/// Angle-and-distance codebook with 1/s non-uniform distance sampling.
/// Entry n carries S_n codewords; distances[0] is +infinity (far layer).
struct PolarCodebook
{
    struct AngleEntry
    {
        std::vector<double> distances_m;      // distances_m[0] = +inf
        std::vector<ComplexVector> codewords; // codewords[s] = b(theta_n, r_{n,s})
    };

    std::vector<double> angles;
    std::vector<AngleEntry> entries;
    double threshold_distance_m = 0.0; // Z_Delta

    int num_angles() const { return static_cast<int>(entries.size()); }
    std::size_t total_codewords() const;
    int samples_at(int angle_index) const; // S_n, angle_index 1-based

    /// Bounds-checked codeword lookup; throws std::out_of_range.
    const ComplexVector& codeword(CodewordId id) const;
    double distance_m(CodewordId id) const;
};

/// Uniform spatial grid theta_n = (2n - N - 1)/N, n = 1..N.
std::vector<double> grid_angles(int num_antennas);

FarFieldCodebook build_far_codebook(const SystemConfig& cfg);

/// Z_Delta = D^2 / (2 * alpha_Delta^2 * lambda) with D = (N-1)d.
double threshold_distance(const SystemConfig& cfg);

/// Sampled distances for one angle: element 0 is +inf, element s >= 1 is
/// Z_Delta * (1 - theta^2) / s. Length is exactly `count`.
std::vector<double> sample_distances(double theta, int count, const SystemConfig& cfg);

/// Polar codebook with uniform S = cfg.distance_samples per angle. When
/// cfg.min_sample_distance_m > 0, finite samples below that distance are
/// dropped (the s = 0 far layer is always kept).
PolarCodebook build_polar_codebook(const SystemConfig& cfg);

/// Same, with an explicit per-angle sample count (size must equal N).
PolarCodebook build_polar_codebook(const SystemConfig& cfg, std::span<const int> samples_per_angle);

/// Training-symbol counts. The formula variants use the configured uniform
/// S; the span variants sum explicit per-angle counts.
long overhead_exhaustive(const SystemConfig& cfg);
long overhead_exhaustive(std::span<const int> samples_per_angle);
long overhead_two_phase(const SystemConfig& cfg);
long overhead_two_phase(int num_antennas, std::span<const int> candidate_samples);

/// CSV serialization. Schema:
///   angle_index,distance_index,theta,distance_m,re_0..re_{N-1},im_0..im_{N-1}
/// distance_m is the literal string "inf" for the s = 0 layer. Numbers use
/// the shortest round-trip format.
void export_codebook_csv(const PolarCodebook& cb, const std::string& path);
void export_codebook_csv(const FarFieldCodebook& cb, const std::string& path);
PolarCodebook import_codebook_csv(const std::string& path);

} // namespace xlbt
