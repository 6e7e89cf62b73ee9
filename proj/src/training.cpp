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

#include "xlbt/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlbt {

ReceivedPilot receive_pilot(const ChannelVector& channel, const ComplexVector& v, CodewordId id,
                            const SystemConfig& cfg, RandomStream& rng)
{
    const std::complex<double> signal =
        inner_product(channel.vector, v) * std::sqrt(cfg.tx_power_w);
    const std::complex<double> y = signal + rng.complex_gaussian(cfg.noise_power_w);
    return {id, y, std::norm(y)};
}

namespace {

std::vector<ReceivedPilot> sweep_far_codebook(const ChannelVector& channel,
                                              const FarFieldCodebook& codebook,
                                              const SystemConfig& cfg, RandomStream& rng)
{
    std::vector<ReceivedPilot> pilots;
    pilots.reserve(codebook.size());
    for (int n = 1; n <= codebook.size(); ++n)
        pilots.push_back(receive_pilot(channel, codebook.codewords[n - 1], {n, 0}, cfg, rng));
    return pilots;
}

// First strict maximum: ties resolve to the lowest codeword id because the
// sweep order is (angle asc, distance asc).
std::size_t argmax_power(const std::vector<ReceivedPilot>& pilots)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < pilots.size(); ++i)
        if (pilots[i].power > pilots[best].power)
            best = i;
    return best;
}

void append_trace(std::vector<ReceivedPilot>* trace, const std::vector<ReceivedPilot>& pilots)
{
    if (trace)
        trace->insert(trace->end(), pilots.begin(), pilots.end());
}

} // namespace

TrainingOutcome far_field_exhaustive(const ChannelVector& channel, const FarFieldCodebook& codebook,
                                     const SystemConfig& cfg, RandomStream& rng,
                                     std::vector<ReceivedPilot>* trace)
{
    const auto pilots = sweep_far_codebook(channel, codebook, cfg, rng);
    append_trace(trace, pilots);
    const auto best = argmax_power(pilots);
    TrainingOutcome outcome;
    outcome.selected = pilots[best].id;
    outcome.pilots_used = codebook.size();
    outcome.beamformer = codebook.codewords[best];
    return outcome;
}

TrainingOutcome polar_exhaustive(const ChannelVector& channel, const PolarCodebook& codebook,
                                 const SystemConfig& cfg, RandomStream& rng,
                                 std::vector<ReceivedPilot>* trace)
{
    std::vector<ReceivedPilot> pilots;
    pilots.reserve(codebook.total_codewords());
    for (int n = 1; n <= codebook.num_angles(); ++n)
        for (int s = 0; s < codebook.samples_at(n); ++s)
            pilots.push_back(receive_pilot(channel, codebook.codeword({n, s}), {n, s}, cfg, rng));
    append_trace(trace, pilots);
    const auto best = argmax_power(pilots);
    TrainingOutcome outcome;
    outcome.selected = pilots[best].id;
    outcome.pilots_used = static_cast<long>(pilots.size());
    outcome.beamformer = codebook.codeword(pilots[best].id);
    return outcome;
}

DominantAngleSet dominant_angle_region(const std::vector<ReceivedPilot>& farfield_pilots, double rho)
{
    if (farfield_pilots.empty())
        throw std::invalid_argument("dominant_angle_region: no pilots");
    for (std::size_t i = 0; i < farfield_pilots.size(); ++i)
        if (farfield_pilots[i].id.angle_index != static_cast<int>(i) + 1 ||
            farfield_pilots[i].id.distance_index != 0)
            throw std::invalid_argument(
                "dominant_angle_region: pilots must cover angles 1..N in order");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("dominant_angle_region: rho must lie in (0, 1)");

    const auto best = argmax_power(farfield_pilots);
    DominantAngleSet out;
    out.threshold = rho * rho * farfield_pilots[best].power;
    for (const auto& p : farfield_pilots)
        if (p.power > out.threshold)
            out.indices.push_back(p.id.angle_index);
    // Strict inequality leaves the set empty only when every power is zero;
    // the argmax index is part of the region by definition.
    if (out.indices.empty())
        out.indices.push_back(farfield_pilots[best].id.angle_index);
    return out;
}

CandidateAngleSet middle_k_candidates(const DominantAngleSet& dominant, int num_candidates,
                                      int num_antennas)
{
    if (dominant.indices.empty())
        throw std::invalid_argument("middle_k_candidates: dominant set is empty");
    if (num_candidates < 1 || num_candidates > num_antennas)
        throw std::invalid_argument("middle_k_candidates: K must lie in [1, N]");

    std::vector<int> sorted = dominant.indices;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = (m % 2 == 1)
                              ? sorted[m / 2]
                              : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
    const int center = static_cast<int>(std::floor(median));

    int lo = center - (num_candidates - 1) / 2;
    int hi = center + num_candidates / 2; // ceil((K-1)/2) above the center
    if (lo < 1)
    {
        hi += 1 - lo;
        lo = 1;
    }
    if (hi > num_antennas)
    {
        lo -= hi - num_antennas;
        hi = num_antennas;
    }

    CandidateAngleSet out;
    out.indices.reserve(num_candidates);
    for (int n = lo; n <= hi; ++n)
        out.indices.push_back(n);
    return out;
}

TrainingOutcome two_phase_training(const ChannelVector& channel, const FarFieldCodebook& farfield,
                                   const PolarCodebook& polar, const SystemConfig& cfg,
                                   RandomStream& rng, int num_candidates,
                                   std::vector<ReceivedPilot>* trace)
{
    const int k = num_candidates > 0 ? num_candidates : cfg.num_candidates;

    // Phase 1: angle-domain sweep, dominant region, middle-K candidates.
    const auto angle_pilots = sweep_far_codebook(channel, farfield, cfg, rng);
    append_trace(trace, angle_pilots);
    const auto dominant = dominant_angle_region(angle_pilots, cfg.gain_threshold);
    const auto candidates = middle_k_candidates(dominant, k, farfield.size());

    // Phase 2: distance-domain sweep over the candidate angles only.
    std::vector<ReceivedPilot> distance_pilots;
    for (int n : candidates.indices)
        for (int s = 0; s < polar.samples_at(n); ++s)
            distance_pilots.push_back(
                receive_pilot(channel, polar.codeword({n, s}), {n, s}, cfg, rng));
    append_trace(trace, distance_pilots);

    const auto best = argmax_power(distance_pilots);
    TrainingOutcome outcome;
    outcome.selected = distance_pilots[best].id;
    outcome.pilots_used = static_cast<long>(angle_pilots.size() + distance_pilots.size());
    outcome.beamformer = polar.codeword(distance_pilots[best].id);
    return outcome;
}

CodewordId oracle_best_codeword(const ChannelVector& channel, const PolarCodebook& codebook)
{
    CodewordId best{1, 0};
    double best_gain = -1.0;
    for (int n = 1; n <= codebook.num_angles(); ++n)
        for (int s = 0; s < codebook.samples_at(n); ++s)
        {
            const double gain = std::norm(inner_product(channel.vector, codebook.codeword({n, s})));
            if (gain > best_gain)
            {
                best_gain = gain;
                best = {n, s};
            }
        }
    return best;
}

TrainingOutcome ls_channel_estimation(const ChannelVector& channel, const FarFieldCodebook& codebook,
                                      const SystemConfig& cfg, RandomStream& rng,
                                      ComplexVector* estimate_out, std::vector<ReceivedPilot>* trace)
{
    const int n_ant = codebook.size();
    const double sqrt_p = std::sqrt(cfg.tx_power_w);

    // N pilots through the unitary far-field codebook matrix W: the n-th
    // observation is y_n = (g^H w_n) sqrt(P) + z_n. The LS inverse is
    // g_hat = (1/sqrt(P)) * sum_n w_n * conj(y_n).
    ComplexVector estimate(n_ant, {0.0, 0.0});
    for (int n = 1; n <= n_ant; ++n)
    {
        const auto pilot = receive_pilot(channel, codebook.codewords[n - 1], {n, 0}, cfg, rng);
        if (trace)
            trace->push_back(pilot);
        const std::complex<double> weight = std::conj(pilot.sample) / sqrt_p;
        const auto& w = codebook.codewords[n - 1];
        for (int i = 0; i < n_ant; ++i)
            estimate[i] += w[i] * weight;
    }

    // Analog phase shifters: keep only the per-antenna phases.
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_ant));
    ComplexVector beamformer(n_ant);
    for (int i = 0; i < n_ant; ++i)
    {
        const double mag = std::abs(estimate[i]);
        beamformer[i] = (mag > 0.0) ? estimate[i] / mag * scale
                                    : std::complex<double>{scale, 0.0};
    }

    if (estimate_out)
        *estimate_out = std::move(estimate);

    TrainingOutcome outcome;
    outcome.pilots_used = n_ant;
    outcome.beamformer = std::move(beamformer);
    return outcome;
}

} // namespace xlbt
