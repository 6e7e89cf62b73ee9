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

#include "xlbt/array_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xlbt {

namespace {

// exp(j*2*pi*cycles) with the argument reduced modulo one full turn first.
// Callers pass cycle counts (phase / 2pi), which keeps the reduction exact
// for the small path-difference arguments used throughout.
std::complex<double> unit_phasor(double cycles)
{
    const double frac = std::remainder(cycles, 1.0);
    const double phase = 2.0 * M_PI * frac;
    return {std::cos(phase), std::sin(phase)};
}

} // namespace

void SystemConfig::validate() const
{
    if (num_antennas < 2)
        throw std::invalid_argument("num_antennas: must be >= 2, got " + std::to_string(num_antennas));
    if (!(carrier_freq_hz > 0.0))
        throw std::invalid_argument("carrier_freq_hz: must be positive");
    if (!(ref_gain > 0.0))
        throw std::invalid_argument("ref_gain: must be positive");
    if (!(tx_power_w > 0.0))
        throw std::invalid_argument("tx_power_w: must be positive");
    if (noise_power_w < 0.0)
        throw std::invalid_argument("noise_power_w: must be >= 0");
    if (!(coherence_param > 0.0))
        throw std::invalid_argument("coherence_param: must be positive");
    if (!(gain_threshold > 0.0 && gain_threshold < 1.0))
        throw std::invalid_argument("gain_threshold: must lie in (0, 1)");
    if (num_candidates < 1 || num_candidates > num_antennas)
        throw std::invalid_argument("num_candidates: must lie in [1, num_antennas]");
    if (distance_samples < 1)
        throw std::invalid_argument("distance_samples: must be >= 1");
    if (min_sample_distance_m < 0.0)
        throw std::invalid_argument("min_sample_distance_m: must be >= 0");
}

void UserLocation::validate() const
{
    if (!(theta >= -1.0 && theta <= 1.0))
        throw std::invalid_argument("theta: must lie in [-1, 1]");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("distance_m: must be positive");
}

double antenna_offset(int antenna_index, const SystemConfig& cfg)
{
    if (antenna_index < 1 || antenna_index > cfg.num_antennas)
        throw std::invalid_argument("antenna_index: must lie in [1, N], got " +
                                    std::to_string(antenna_index));
    return (2.0 * antenna_index - cfg.num_antennas - 1.0) / 2.0;
}

double per_antenna_distance(int antenna_index, const UserLocation& loc, const SystemConfig& cfg)
{
    const double dd = antenna_offset(antenna_index, cfg) * cfg.antenna_spacing_m();
    const double r = loc.distance_m;
    return std::sqrt(r * r + dd * dd - 2.0 * r * loc.theta * dd);
}

ComplexVector near_steering(const UserLocation& loc, const SystemConfig& cfg)
{
    const int n_ant = cfg.num_antennas;
    const double lambda = cfg.wavelength_m();
    const double d = cfg.antenna_spacing_m();
    const double r = loc.distance_m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_ant));

    ComplexVector out(n_ant);
    for (int n = 1; n <= n_ant; ++n)
    {
        const double dd = ((2.0 * n - n_ant - 1.0) / 2.0) * d;
        const double rn = std::sqrt(r * r + dd * dd - 2.0 * r * loc.theta * dd);
        // r_n - r via the difference of squares; exact algebra, and it keeps
        // full precision when r dwarfs the aperture (rn ~ r).
        const double path_delta = (dd * dd - 2.0 * r * loc.theta * dd) / (rn + r);
        out[n - 1] = scale * unit_phasor(-path_delta / lambda);
    }
    return out;
}

ComplexVector far_steering(double theta, const SystemConfig& cfg)
{
    const int n_ant = cfg.num_antennas;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_ant));

    ComplexVector out(n_ant);
    for (int n = 1; n <= n_ant; ++n)
    {
        const double delta = (2.0 * n - n_ant - 1.0) / 2.0;
        out[n - 1] = scale * unit_phasor(theta * delta / 2.0);
    }
    return out;
}

ChannelVector synthesize_channel(const UserLocation& loc, const SystemConfig& cfg)
{
    if (!(loc.distance_m > 0.0))
        throw std::domain_error("synthesize_channel: user distance must be positive");

    const double lambda = cfg.wavelength_m();
    const std::complex<double> h =
        (std::sqrt(cfg.ref_gain) / loc.distance_m) * unit_phasor(-loc.distance_m / lambda);

    ChannelVector ch;
    ch.gain = h;
    ch.truth = loc;
    ch.vector = near_steering(loc, cfg);
    const std::complex<double> scale = std::sqrt(static_cast<double>(cfg.num_antennas)) * h;
    for (auto& v : ch.vector)
        v *= scale;
    return ch;
}

std::complex<double> inner_product(const ComplexVector& u, const ComplexVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("inner_product: length mismatch (" +
                                    std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += std::conj(u[i]) * v[i];
    return acc;
}

double vector_norm(const ComplexVector& v)
{
    double acc = 0.0;
    for (const auto& z : v)
        acc += std::norm(z);
    return std::sqrt(acc);
}

double beam_gain(const ComplexVector& u, const ComplexVector& w)
{
    return std::abs(inner_product(u, w));
}

double rayleigh_distance(double aperture_m, double wavelength_m)
{
    if (!(aperture_m > 0.0))
        throw std::invalid_argument("aperture_m: must be positive");
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("wavelength_m: must be positive");
    return 2.0 * aperture_m * aperture_m / wavelength_m;
}

} // namespace xlbt
