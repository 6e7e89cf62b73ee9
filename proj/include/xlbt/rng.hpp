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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace xlbt {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
    return mix64(mix64(mix64(master) ^ a) ^ b);
}

/// Seedable random stream. Every draw goes through explicit bit-to-double
/// conversion and Box-Muller so the byte stream depends only on the seed,
/// not on the standard library's distribution implementations.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    static RandomStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
    {
        return RandomStream(derive_seed(master, a, b));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; draws two uniforms per call.
    double gaussian()
    {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    /// variance == 0 returns exactly zero without consuming draws.
    std::complex<double> complex_gaussian(double variance)
    {
        if (variance <= 0.0)
            return {0.0, 0.0};
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-std::log(u1) * variance);
        return {mag * std::cos(2.0 * M_PI * u2), mag * std::sin(2.0 * M_PI * u2)};
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace xlbt
