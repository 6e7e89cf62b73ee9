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

#include <optional>
#include <vector>

namespace xlbt {

/// One downlink pilot observation at the user.
struct ReceivedPilot
{
    CodewordId id;
    std::complex<double> sample;  // y
    double power = 0.0;           // |y|^2
};

/// Far-field codeword indices whose received power clears the
/// rho^2 * max threshold. Sorted ascending; never empty.
struct DominantAngleSet
{
    std::vector<int> indices;
    double threshold = 0.0;
};

/// K contiguous candidate angle indices, clamped into [1, N].
struct CandidateAngleSet
{
    std::vector<int> indices;
};

/// Result of one training run. `selected` is empty for schemes that do not
/// pick a codeword (LS estimation, perfect CSI).
struct TrainingOutcome
{
    std::optional<CodewordId> selected;
    long pilots_used = 0;
    ComplexVector beamformer;
};

/// y = (channel^H v) * sqrt(P) + z with z ~ CN(0, sigma^2). The pilot
/// symbol is the deterministic x = sqrt(P).
ReceivedPilot receive_pilot(const ChannelVector& channel, const ComplexVector& v, CodewordId id,
                            const SystemConfig& cfg, RandomStream& rng);

/// Sweep all N far-field beams, feed back the argmax power index.
TrainingOutcome far_field_exhaustive(const ChannelVector& channel, const FarFieldCodebook& codebook,
                                     const SystemConfig& cfg, RandomStream& rng,
                                     std::vector<ReceivedPilot>* trace = nullptr);

/// Sweep every polar-domain codeword, feed back the argmax (n, s).
TrainingOutcome polar_exhaustive(const ChannelVector& channel, const PolarCodebook& codebook,
                                 const SystemConfig& cfg, RandomStream& rng,
                                 std::vector<ReceivedPilot>* trace = nullptr);

/// Indices with power strictly above rho^2 * max power. Requires one pilot
/// per far-field codeword, ordered by angle index. Guaranteed to contain
/// the argmax index.
DominantAngleSet dominant_angle_region(const std::vector<ReceivedPilot>& farfield_pilots, double rho);

/// Middle-K window around floor(Med(Psi)); shifted (not shrunk) when it
/// would leave [1, N]. Med of an even-cardinality set is the mean of the
/// two middle indices.
CandidateAngleSet middle_k_candidates(const DominantAngleSet& dominant, int num_candidates,
                                      int num_antennas);

/// Two-phase training: angle-domain sweep over the far-field codebook,
/// then distance-domain sweep over the polar codewords of the K candidate
/// angles only. num_candidates <= 0 uses cfg.num_candidates.
TrainingOutcome two_phase_training(const ChannelVector& channel, const FarFieldCodebook& farfield,
                                   const PolarCodebook& polar, const SystemConfig& cfg,
                                   RandomStream& rng, int num_candidates = 0,
                                   std::vector<ReceivedPilot>* trace = nullptr);

/// Noiseless argmax of |channel^H f| over the whole polar codebook; ties
/// break toward the lowest (angle, distance) index.
CodewordId oracle_best_codeword(const ChannelVector& channel, const PolarCodebook& codebook);

/// Downlink LS estimation through the unitary far-field pilot matrix,
/// followed by the unit-modulus (phase-only) beamformer projection.
/// estimate_out, when given, receives the raw channel estimate.
TrainingOutcome ls_channel_estimation(const ChannelVector& channel, const FarFieldCodebook& codebook,
                                      const SystemConfig& cfg, RandomStream& rng,
                                      ComplexVector* estimate_out = nullptr,
                                      std::vector<ReceivedPilot>* trace = nullptr);

} // namespace xlbt
