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

#include "xlbt/codebook.hpp"
#include "xlbt/format_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace xlbt {

std::size_t PolarCodebook::total_codewords() const
{
    std::size_t total = 0;
    for (const auto& e : entries)
        total += e.codewords.size();
    return total;
}

int PolarCodebook::samples_at(int angle_index) const
{
    if (angle_index < 1 || angle_index > num_angles())
        throw std::out_of_range("samples_at: angle index out of range");
    return static_cast<int>(entries[angle_index - 1].codewords.size());
}

const ComplexVector& PolarCodebook::codeword(CodewordId id) const
{
    if (id.angle_index < 1 || id.angle_index > num_angles())
        throw std::out_of_range("codeword: angle index out of range");
    const auto& entry = entries[id.angle_index - 1];
    if (id.distance_index < 0 || id.distance_index >= static_cast<int>(entry.codewords.size()))
        throw std::out_of_range("codeword: distance index out of range");
    return entry.codewords[id.distance_index];
}

double PolarCodebook::distance_m(CodewordId id) const
{
    if (id.angle_index < 1 || id.angle_index > num_angles())
        throw std::out_of_range("distance_m: angle index out of range");
    const auto& entry = entries[id.angle_index - 1];
    if (id.distance_index < 0 || id.distance_index >= static_cast<int>(entry.distances_m.size()))
        throw std::out_of_range("distance_m: distance index out of range");
    return entry.distances_m[id.distance_index];
}

std::vector<double> grid_angles(int num_antennas)
{
    std::vector<double> angles(num_antennas);
    for (int n = 1; n <= num_antennas; ++n)
        angles[n - 1] = (2.0 * n - num_antennas - 1.0) / num_antennas;
    return angles;
}

FarFieldCodebook build_far_codebook(const SystemConfig& cfg)
{
    cfg.validate();
    FarFieldCodebook cb;
    cb.angles = grid_angles(cfg.num_antennas);
    cb.codewords.reserve(cb.angles.size());
    for (double theta : cb.angles)
        cb.codewords.push_back(far_steering(theta, cfg));
    return cb;
}

double threshold_distance(const SystemConfig& cfg)
{
    const double aperture = cfg.aperture_m();
    const double alpha = cfg.coherence_param;
    return aperture * aperture / (2.0 * alpha * alpha * cfg.wavelength_m());
}

std::vector<double> sample_distances(double theta, int count, const SystemConfig& cfg)
{
    if (count < 1)
        throw std::invalid_argument("sample_distances: count must be >= 1");
    const double anchor = threshold_distance(cfg) * (1.0 - theta * theta);
    std::vector<double> out(count);
    out[0] = std::numeric_limits<double>::infinity();
    for (int s = 1; s < count; ++s)
        out[s] = anchor / s;
    return out;
}

namespace {

PolarCodebook build_polar_impl(const SystemConfig& cfg, std::span<const int> samples_per_angle)
{
    PolarCodebook cb;
    cb.angles = grid_angles(cfg.num_antennas);
    cb.threshold_distance_m = threshold_distance(cfg);
    cb.entries.resize(cfg.num_antennas);

    for (int n = 1; n <= cfg.num_antennas; ++n)
    {
        const double theta = cb.angles[n - 1];
        auto distances = sample_distances(theta, samples_per_angle[n - 1], cfg);

        if (cfg.min_sample_distance_m > 0.0)
        {
            // Drop the degenerate near-endfire tail; the far layer stays.
            while (distances.size() > 1 && distances.back() < cfg.min_sample_distance_m)
                distances.pop_back();
        }

        auto& entry = cb.entries[n - 1];
        entry.distances_m = distances;
        entry.codewords.reserve(distances.size());
        entry.codewords.push_back(far_steering(theta, cfg));
        for (std::size_t s = 1; s < distances.size(); ++s)
            entry.codewords.push_back(near_steering({theta, distances[s]}, cfg));
    }
    return cb;
}

} // namespace

PolarCodebook build_polar_codebook(const SystemConfig& cfg)
{
    cfg.validate();
    std::vector<int> samples(cfg.num_antennas, cfg.distance_samples);
    return build_polar_impl(cfg, samples);
}

PolarCodebook build_polar_codebook(const SystemConfig& cfg, std::span<const int> samples_per_angle)
{
    cfg.validate();
    if (static_cast<int>(samples_per_angle.size()) != cfg.num_antennas)
        throw std::invalid_argument("build_polar_codebook: per-angle sample list must have N entries");
    for (int s : samples_per_angle)
        if (s < 1)
            throw std::invalid_argument("build_polar_codebook: per-angle sample counts must be >= 1");
    return build_polar_impl(cfg, samples_per_angle);
}

long overhead_exhaustive(const SystemConfig& cfg)
{
    cfg.validate();
    return static_cast<long>(cfg.num_antennas) * cfg.distance_samples;
}

long overhead_exhaustive(std::span<const int> samples_per_angle)
{
    return std::accumulate(samples_per_angle.begin(), samples_per_angle.end(), 0L);
}

long overhead_two_phase(const SystemConfig& cfg)
{
    cfg.validate();
    return cfg.num_antennas + static_cast<long>(cfg.num_candidates) * cfg.distance_samples;
}

long overhead_two_phase(int num_antennas, std::span<const int> candidate_samples)
{
    return num_antennas + std::accumulate(candidate_samples.begin(), candidate_samples.end(), 0L);
}

namespace {

void write_codeword_row(std::ostream& os, int angle_index, int distance_index, double theta,
                        double distance_m, const ComplexVector& cw)
{
    os << angle_index << ',' << distance_index << ',' << format_double(theta) << ',';
    if (std::isinf(distance_m))
        os << "inf";
    else
        os << format_double(distance_m);
    for (const auto& z : cw)
        os << ',' << format_double(z.real());
    for (const auto& z : cw)
        os << ',' << format_double(z.imag());
    os << '\n';
}

void write_codebook_header(std::ostream& os, int n_ant)
{
    os << "angle_index,distance_index,theta,distance_m";
    for (int i = 0; i < n_ant; ++i)
        os << ",re_" << i;
    for (int i = 0; i < n_ant; ++i)
        os << ",im_" << i;
    os << '\n';
}

std::ofstream open_for_write(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

} // namespace

void export_codebook_csv(const PolarCodebook& cb, const std::string& path)
{
    auto os = open_for_write(path);
    const int n_ant = cb.entries.empty() ? 0 : static_cast<int>(cb.entries[0].codewords[0].size());
    write_codebook_header(os, n_ant);
    for (int n = 1; n <= cb.num_angles(); ++n)
    {
        const auto& entry = cb.entries[n - 1];
        for (std::size_t s = 0; s < entry.codewords.size(); ++s)
            write_codeword_row(os, n, static_cast<int>(s), cb.angles[n - 1], entry.distances_m[s],
                               entry.codewords[s]);
    }
    if (!os.flush())
        throw std::runtime_error("write failed: " + path);
}

void export_codebook_csv(const FarFieldCodebook& cb, const std::string& path)
{
    auto os = open_for_write(path);
    const int n_ant = cb.codewords.empty() ? 0 : static_cast<int>(cb.codewords[0].size());
    write_codebook_header(os, n_ant);
    for (int n = 1; n <= cb.size(); ++n)
        write_codeword_row(os, n, 0, cb.angles[n - 1],
                           std::numeric_limits<double>::infinity(), cb.codewords[n - 1]);
    if (!os.flush())
        throw std::runtime_error("write failed: " + path);
}

PolarCodebook import_codebook_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open codebook file: " + path);

    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("empty codebook file: " + path);
    // number of antennas from the column count: 4 fixed columns + 2N
    const auto columns = static_cast<long>(std::count(header.begin(), header.end(), ',')) + 1;
    if (columns < 6 || (columns - 4) % 2 != 0)
        throw std::runtime_error("malformed codebook header: " + path);
    const int n_ant = static_cast<int>((columns - 4) / 2);

    std::map<int, PolarCodebook::AngleEntry> by_angle;
    std::map<int, double> angle_values;
    std::string line;
    long line_no = 1;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        cells.reserve(columns);
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (static_cast<long>(cells.size()) != columns)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong column count");

        const int angle_index = std::stoi(cells[0]);
        const int distance_index = std::stoi(cells[1]);
        const double theta = parse_double(cells[2]);
        const double dist = (cells[3] == "inf") ? std::numeric_limits<double>::infinity()
                                                : parse_double(cells[3]);
        ComplexVector cw(n_ant);
        for (int i = 0; i < n_ant; ++i)
            cw[i] = {parse_double(cells[4 + i]), parse_double(cells[4 + n_ant + i])};

        auto& entry = by_angle[angle_index];
        if (static_cast<int>(entry.codewords.size()) != distance_index)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": distance indices must be contiguous from 0");
        entry.distances_m.push_back(dist);
        entry.codewords.push_back(std::move(cw));
        angle_values[angle_index] = theta;
    }
    if (by_angle.empty())
        throw std::runtime_error("codebook has no codewords: " + path);

    PolarCodebook cb;
    const int n_angles = by_angle.rbegin()->first;
    cb.entries.resize(n_angles);
    cb.angles.resize(n_angles, 0.0);
    for (auto& [idx, entry] : by_angle)
    {
        if (idx < 1 || idx > n_angles)
            throw std::runtime_error("codebook angle index out of range: " + std::to_string(idx));
        cb.angles[idx - 1] = angle_values[idx];
        cb.entries[idx - 1] = std::move(entry);
    }
    for (const auto& entry : cb.entries)
        if (entry.codewords.empty())
            throw std::runtime_error("codebook is missing an angle entry: " + path);
    return cb;
}

} // namespace xlbt
