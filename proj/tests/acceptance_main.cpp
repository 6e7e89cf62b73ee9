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
//
// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "xlbt/config_io.hpp"
#include "xlbt/format_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

using namespace xlbt;

namespace {

struct Failure
{
    std::string detail;
};

void require(bool ok, const std::string& detail)
{
    if (!ok)
        throw Failure{detail};
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- criteria

std::string overhead_arithmetic()
{
    SystemConfig cfg;
    cfg.num_antennas = 256;
    cfg.distance_samples = 6;
    cfg.num_candidates = 3;
    require(overhead_two_phase(cfg) == 274,
            "two-phase overhead at K=3 is " + std::to_string(overhead_two_phase(cfg)));
    require(overhead_exhaustive(cfg) == 1536,
            "exhaustive overhead is " + std::to_string(overhead_exhaustive(cfg)));
    cfg.num_candidates = 1;
    require(overhead_two_phase(cfg) == 262,
            "two-phase overhead at K=1 is " + std::to_string(overhead_two_phase(cfg)));

    // live pilot counts agree with the formulas
    cfg.num_candidates = 3;
    cfg.noise_power_w = 0.0;
    const auto farfield = build_far_codebook(cfg);
    const auto polar = build_polar_codebook(cfg);
    const auto channel = synthesize_channel({0.21, 8.0}, cfg);
    RandomStream rng(1);
    require(two_phase_training(channel, farfield, polar, cfg, rng).pilots_used == 274,
            "live two-phase pilot count mismatch");
    RandomStream rng2(1);
    require(polar_exhaustive(channel, polar, cfg, rng2).pilots_used == 1536,
            "live exhaustive pilot count mismatch");
    return "274 / 262 / 1536 training symbols, formulas and live runs agree";
}

std::string rayleigh_check()
{
    const double lambda = kSpeedOfLight / 100e9;
    const double z = rayleigh_distance(0.4, lambda);
    require(z >= 106.0 && z <= 108.0, "2D^2/lambda = " + fmt(z) + " m outside [106, 108]");
    return "2*0.4^2/lambda = " + fmt(z) + " m";
}

std::string oracle_equivalence()
{
    SystemConfig cfg;
    cfg.num_antennas = 64;
    cfg.distance_samples = 6;
    cfg.noise_power_w = 0.0;
    const auto polar = build_polar_codebook(cfg);

    RandomStream loc_rng(2024);
    int agreements = 0;
    const int cases = 1000;
    for (int i = 0; i < cases; ++i)
    {
        const auto loc = draw_user(loc_rng, RangeSpec{0.5, 50.0}, AngleSpec::uniform());
        const auto channel = synthesize_channel(loc, cfg);
        RandomStream rng(i);
        const auto outcome = polar_exhaustive(channel, polar, cfg, rng);
        if (outcome.selected && *outcome.selected == oracle_best_codeword(channel, polar))
            ++agreements;
    }
    require(agreements == cases, "agreement " + std::to_string(agreements) + "/1000");
    return "noiseless exhaustive matches the oracle on 1000/1000 random users";
}

std::string beamgain_regions()
{
    SystemConfig cfg;
    cfg.num_antennas = 256;
    cfg.noise_power_w = 0.0;
    const auto codebook = build_far_codebook(cfg);

    const auto region = [&](double theta, double r) {
        const auto gains = beam_gain_profile(theta, r, codebook, cfg);
        const double peak = *std::max_element(gains.begin(), gains.end());
        std::vector<int> indices;
        for (std::size_t i = 0; i < gains.size(); ++i)
            if (gains[i] > cfg.gain_threshold * peak)
                indices.push_back(static_cast<int>(i) + 1);
        return indices;
    };
    const auto med_floor = [](const std::vector<int>& v) {
        const std::size_t m = v.size();
        const double med = (m % 2 == 1) ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2.0;
        return static_cast<int>(std::floor(med));
    };

    std::ostringstream detail;
    for (double theta : {-0.8, -0.4, 0.4, 0.8})
    {
        const auto far_region = region(theta, 100.0);
        require(far_region.size() <= 2, "far-field 3 dB region spans " +
                                            std::to_string(far_region.size()) +
                                            " beams at theta=" + fmt(theta));

        const auto near_region = region(theta, 1.0);
        require(near_region.size() >= 5, "near-field 3 dB region spans " +
                                             std::to_string(near_region.size()) +
                                             " beams at theta=" + fmt(theta));

        const int nearest_grid =
            std::clamp(static_cast<int>(std::lround((theta * 256 + 256 + 1) / 2.0)), 1, 256);
        const int dev = std::abs(med_floor(near_region) - nearest_grid);
        require(dev <= 3, "median deviation " + std::to_string(dev) + " at theta=" + fmt(theta));
        detail << "theta=" << fmt(theta) << ":far=" << far_region.size()
               << ",near=" << near_region.size() << ",dev=" << dev << " ";
    }
    return detail.str();
}

// criteria 5 and 6 share one Monte Carlo run
struct SnrCloseness
{
    double suc_exhaustive = 0.0;
    double suc_two_phase3 = 0.0;
    std::vector<SchemeAggregate> aggregates;
};

const SnrCloseness& snr_closeness_run()
{
    static const SnrCloseness cached = [] {
        SystemConfig cfg;
        cfg.num_antennas = 128;
        cfg.distance_samples = 6;
        cfg.num_candidates = 3;
        const std::vector<SchemeSpec> schemes = {{SchemeKind::PerfectCsi, 0},
                                                 {SchemeKind::PolarExhaustive, 0},
                                                 {SchemeKind::TwoPhase, 3},
                                                 {SchemeKind::TwoPhase, 1},
                                                 {SchemeKind::FarField, 0}};
        SweepOptions opts;
        opts.snr_fixed_distance_m = 10.0;
        opts.keep_trials = false;
        const auto report = run_snr_sweep(cfg, {20.0}, 500, schemes, 1, opts);
        SnrCloseness out;
        out.aggregates = report.points[0].per_scheme;
        out.suc_exhaustive = out.aggregates[1].success_rate;
        out.suc_two_phase3 = out.aggregates[2].success_rate;
        return out;
    }();
    return cached;
}

std::string high_snr_success_closeness()
{
    const auto& run = snr_closeness_run();
    const double gap = std::abs(run.suc_two_phase3 - run.suc_exhaustive);
    require(gap <= 0.05, "success-rate gap " + fmt(gap) + " exceeds 0.05 (exhaustive " +
                             fmt(run.suc_exhaustive) + ", two-phase " + fmt(run.suc_two_phase3) +
                             ")");
    return "success rates " + fmt(run.suc_exhaustive) + " vs " + fmt(run.suc_two_phase3) +
           ", gap " + fmt(gap);
}

std::string rate_ordering()
{
    const auto& run = snr_closeness_run();
    const auto& aggs = run.aggregates;
    std::ostringstream detail;
    for (const auto& a : aggs)
        detail << a.scheme << "=" << fmt(a.mean_rate_bps_hz) << " ";
    for (std::size_t i = 0; i + 1 < aggs.size(); ++i)
    {
        const double hi = aggs[i].mean_rate_bps_hz;
        const double lo = aggs[i + 1].mean_rate_bps_hz;
        require(hi >= 0.99 * lo, aggs[i].scheme + " (" + fmt(hi) + ") < 0.99 * " +
                                     aggs[i + 1].scheme + " (" + fmt(lo) + "); " + detail.str());
    }
    return detail.str();
}

std::string distance_sweep_trends()
{
    SystemConfig cfg;
    cfg.num_antennas = 128;
    cfg.distance_samples = 6;
    cfg.num_candidates = 3;
    cfg.tx_power_w = 1.0; // 30 dBm
    const std::vector<SchemeSpec> schemes = {{SchemeKind::PerfectCsi, 0},
                                             {SchemeKind::PolarExhaustive, 0},
                                             {SchemeKind::TwoPhase, 3},
                                             {SchemeKind::FarField, 0}};
    SweepOptions opts;
    opts.keep_trials = false;
    const std::vector<double> dists = {3.0, 10.0, 30.0, 60.0, 103.0};
    const auto report = run_distance_sweep(cfg, dists, 300, schemes, 1, opts);

    std::ostringstream detail;
    for (std::size_t s = 0; s < schemes.size(); ++s)
    {
        detail << report.scheme_labels[s] << ":";
        for (const auto& point : report.points)
            detail << fmt(point.per_scheme[s].mean_rate_bps_hz) << ",";
        detail << " ";
        for (std::size_t p = 0; p + 1 < report.points.size(); ++p)
        {
            const double here = report.points[p].per_scheme[s].mean_rate_bps_hz;
            const double there = report.points[p + 1].per_scheme[s].mean_rate_bps_hz;
            require(there <= here * 1.02,
                    report.scheme_labels[s] + " rate rises from " + fmt(here) + " to " +
                        fmt(there) + " between " + fmt(dists[p]) + " m and " + fmt(dists[p + 1]) +
                        " m");
        }
    }

    const double far_rate = report.points.back().per_scheme[3].mean_rate_bps_hz;
    const double two_phase_rate = report.points.back().per_scheme[2].mean_rate_bps_hz;
    const double rel_gap =
        std::abs(far_rate - two_phase_rate) / std::max(far_rate, two_phase_rate);
    require(rel_gap <= 0.02, "far-field " + fmt(far_rate) + " vs two-phase " +
                                 fmt(two_phase_rate) + " at 103 m: relative gap " + fmt(rel_gap) +
                                 " exceeds 0.02");
    return detail.str() + "103m gap " + fmt(rel_gap);
}

std::string determinism()
{
    const auto cfg = parse_config_text("num_antennas = 64\n"
                                       "distance_samples_s = 6\n"
                                       "trials = 50\n"
                                       "seed = 11\n"
                                       "sweep = snr\n"
                                       "snr_db_points = 0,10,20\n",
                                       "<acceptance>");
    const auto schemes = parse_scheme_list(default_scheme_names(cfg, "snr"));

    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path() / "xlbt_acceptance_determinism";
    fs::remove_all(base);

    std::vector<std::string> contents;
    for (int run = 0; run < 2; ++run)
    {
        const auto report =
            run_snr_sweep(cfg.system, cfg.snr_db_points, cfg.trials, schemes, cfg.seed);
        const auto dir = (base / ("run" + std::to_string(run))).string();
        const auto paths = emit_results(report, cfg, dir);
        std::ifstream is(paths[0], std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        contents.push_back(ss.str());
    }
    fs::remove_all(base);
    require(!contents[0].empty(), "empty results.csv");
    require(contents[0] == contents[1], "results.csv differs between identical runs");
    return "byte-identical results.csv across two runs (" +
           std::to_string(contents[0].size()) + " bytes)";
}

std::string invariant_suites()
{
    RandomStream rng(4242);

    // steering-vector unit norm
    for (int i = 0; i < 1000; ++i)
    {
        SystemConfig cfg;
        cfg.num_antennas = 2 + static_cast<int>(rng.uniform(0.0, 199.0));
        const UserLocation loc{rng.uniform(-1.0, 1.0), rng.uniform(0.2, 400.0)};
        const auto v =
            (i % 2 == 0) ? near_steering(loc, cfg) : far_steering(loc.theta, cfg);
        require(std::abs(vector_norm(v) - 1.0) < 1e-12,
                "steering norm off at case " + std::to_string(i));
    }

    // beam-gain global-phase invariance
    {
        SystemConfig cfg;
        cfg.num_antennas = 64;
        for (int i = 0; i < 1000; ++i)
        {
            const auto u = near_steering({rng.uniform(-1.0, 1.0), rng.uniform(0.5, 50.0)}, cfg);
            const auto w = far_steering(rng.uniform(-1.0, 1.0), cfg);
            const double base = beam_gain(u, w);
            const double phi = rng.uniform(0.0, 2.0 * M_PI);
            auto rotated = u;
            for (auto& z : rotated)
                z *= std::complex<double>{std::cos(phi), std::sin(phi)};
            require(std::abs(beam_gain(rotated, w) - base) < 1e-12,
                    "phase invariance broken at case " + std::to_string(i));
        }
    }

    // dominant set nonemptiness + argmax membership on noisy pilots
    for (int i = 0; i < 1000; ++i)
    {
        const int n_ant = 8;
        std::vector<ReceivedPilot> pilots;
        for (int n = 1; n <= n_ant; ++n)
        {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            pilots.push_back({{n, 0}, {re, im}, re * re + im * im});
        }
        const auto psi = dominant_angle_region(pilots, 0.7071067811865476);
        require(!psi.indices.empty(), "empty dominant set");
        int best = 1;
        for (int n = 2; n <= n_ant; ++n)
            if (pilots[n - 1].power > pilots[best - 1].power)
                best = n;
        require(std::find(psi.indices.begin(), psi.indices.end(), best) != psi.indices.end(),
                "argmax missing from dominant set");
    }

    // middle-K cardinality and clamping
    for (int i = 0; i < 1000; ++i)
    {
        const int n_ant = 4 + static_cast<int>(rng.uniform(0.0, 252.0));
        const int k = 1 + static_cast<int>(rng.uniform(0.0, n_ant));
        std::vector<int> indices;
        const int count = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
        for (int j = 0; j < count; ++j)
            indices.push_back(1 + static_cast<int>(rng.uniform(0.0, n_ant)));
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        const auto xi = middle_k_candidates({indices, 0.0}, k, n_ant);
        require(static_cast<int>(xi.indices.size()) == k, "candidate set size != K");
        require(xi.indices.front() >= 1 && xi.indices.back() <= n_ant,
                "candidate set leaves [1, N]");
    }

    // LS noiseless exact recovery
    {
        SystemConfig cfg;
        cfg.num_antennas = 32;
        cfg.noise_power_w = 0.0;
        const auto codebook = build_far_codebook(cfg);
        for (int i = 0; i < 1000; ++i)
        {
            const UserLocation loc{rng.uniform(-1.0, 1.0), rng.uniform(0.5, 80.0)};
            const auto channel = synthesize_channel(loc, cfg);
            RandomStream run_rng(i);
            ComplexVector estimate;
            const auto outcome =
                ls_channel_estimation(channel, codebook, cfg, run_rng, &estimate);
            double err = 0.0;
            for (std::size_t m = 0; m < estimate.size(); ++m)
                err += std::norm(estimate[m] - channel.vector[m]);
            require(std::sqrt(err) <= 1e-9 * vector_norm(channel.vector),
                    "LS recovery error at case " + std::to_string(i));
            require(std::abs(beam_gain(near_steering(loc, cfg), outcome.beamformer) - 1.0) <
                        1e-12,
                    "LS beamformer misaligned at case " + std::to_string(i));
        }
    }
    return "5 property suites x 1000 randomized cases";
}

struct Criterion
{
    int id;
    std::string name;
    std::function<std::string()> run;
};

} // namespace

int main(int argc, char** argv)
{
    std::optional<int> only;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);

    const std::vector<Criterion> criteria = {
        {1, "overhead arithmetic", overhead_arithmetic},
        {2, "rayleigh distance", rayleigh_check},
        {3, "noiseless oracle equivalence", oracle_equivalence},
        {4, "beam-gain dominant regions", beamgain_regions},
        {5, "high-SNR success closeness", high_snr_success_closeness},
        {6, "achievable-rate ordering", rate_ordering},
        {7, "distance-sweep trends", distance_sweep_trends},
        {8, "determinism", determinism},
        {9, "invariant suites", invariant_suites},
    };

    int failures = 0;
    for (const auto& criterion : criteria)
    {
        if (only && *only != criterion.id)
            continue;
        try
        {
            const std::string detail = criterion.run();
            std::cout << "[PASS] criterion " << criterion.id << " (" << criterion.name
                      << "): " << detail << "\n";
        }
        catch (const Failure& f)
        {
            ++failures;
            std::cout << "[FAIL] criterion " << criterion.id << " (" << criterion.name
                      << "): " << f.detail << "\n";
        }
        catch (const std::exception& e)
        {
            ++failures;
            std::cout << "[FAIL] criterion " << criterion.id << " (" << criterion.name
                      << "): unexpected error: " << e.what() << "\n";
        }
        std::cout.flush();
    }
    if (failures)
        std::cout << failures << " criterion(s) failed\n";
    else
        std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
