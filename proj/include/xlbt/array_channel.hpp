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

#include <complex>
#include <vector>

namespace xlbt {

inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s

using ComplexVector = std::vector<std::complex<double>>;

/// Physical constants and array parameters of one ULA downlink setup.
/// Wavelength and antenna spacing are always derived (lambda = c/f,
/// d = lambda/2), never stored, so they cannot drift out of sync.
struct SystemConfig
{
    int num_antennas = 256;          // N
    double carrier_freq_hz = 100e9;  // f
    double ref_gain = 6.309573444801930e-08; // beta, linear (-72 dB)
    double tx_power_w = 1.0;         // P (30 dBm)
    double noise_power_w = 1e-10;    // sigma^2 (-70 dBm)
    double coherence_param = 1.2;    // alpha_Delta, distance-grid density
    double gain_threshold = 0.7071067811865476; // rho, 3 dB region
    int num_candidates = 3;          // K, two-phase candidate angles
    int distance_samples = 6;        // S, uniform per-angle sample count
    double min_sample_distance_m = 0.0; // 0 disables near-endfire truncation

    double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
    double antenna_spacing_m() const { return wavelength_m() / 2.0; }
    /// Physical span of the ULA, D = (N-1)d.
    double aperture_m() const { return (num_antennas - 1) * antenna_spacing_m(); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Ground-truth user position in the array's polar coordinates.
/// theta is the spatial angle 2d*cos(phi)/lambda in [-1, 1].
struct UserLocation
{
    double theta = 0.0;
    double distance_m = 0.0;

    void validate() const;
};

/// LoS channel between the array and one user. `vector` holds
/// sqrt(N) * h * b(theta, r) elementwise; `gain` is the complex scalar h.
struct ChannelVector
{
    ComplexVector vector;
    std::complex<double> gain;
    UserLocation truth;
};

/// Signed half-integer offset of antenna n (1-based) from the array center,
/// (2n - N - 1) / 2.
double antenna_offset(int antenna_index, const SystemConfig& cfg);

/// Exact Euclidean distance from antenna n at (0, delta_n * d) to the user.
double per_antenna_distance(int antenna_index, const UserLocation& loc, const SystemConfig& cfg);

/// Spherical-wavefront steering vector; entry n is
/// (1/sqrt(N)) * exp(-j*2*pi*(r_n - r)/lambda). Unit Euclidean norm.
ComplexVector near_steering(const UserLocation& loc, const SystemConfig& cfg);

/// Planar-wavefront steering vector, phase-referenced to the array center
/// so that near_steering converges to it entrywise as r -> infinity.
ComplexVector far_steering(double theta, const SystemConfig& cfg);

/// LoS channel with h = (sqrt(beta)/r) * exp(-j*2*pi*r/lambda).
ChannelVector synthesize_channel(const UserLocation& loc, const SystemConfig& cfg);

/// Inner product, conjugate-linear in the first argument: sum(conj(u)*v).
std::complex<double> inner_product(const ComplexVector& u, const ComplexVector& v);

double vector_norm(const ComplexVector& v);

/// Normalized beam gain |u^H w|.
double beam_gain(const ComplexVector& u, const ComplexVector& w);

/// Near/far field boundary 2*D^2/lambda for an aperture D.
double rayleigh_distance(double aperture_m, double wavelength_m);

} // namespace xlbt
