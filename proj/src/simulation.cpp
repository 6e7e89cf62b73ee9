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

#include "xlbt/simulation.hpp"
#include "xlbt/format_util.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace xlbt {

std::string SchemeSpec::label(const SystemConfig& cfg) const
{
    switch (kind)
    {
    case SchemeKind::PerfectCsi:
        return "perfect_csi";
    case SchemeKind::PolarExhaustive:
        return "polar_exhaustive";
    case SchemeKind::TwoPhase:
    {
        const int k = num_candidates > 0 ? num_candidates : cfg.num_candidates;
        return "two_phase_k" + std::to_string(k);
    }
    case SchemeKind::FarField:
        return "far_field";
    case SchemeKind::LsEstimation:
        return "ls_estimation";
    }
    throw std::logic_error("unknown scheme kind");
}

SchemeSpec parse_scheme(const std::string& text)
{
    if (text == "perfect-csi" || text == "perfect_csi")
        return {SchemeKind::PerfectCsi, 0};
    if (text == "exhaustive" || text == "polar-exhaustive" || text == "polar_exhaustive")
        return {SchemeKind::PolarExhaustive, 0};
    if (text == "far-field" || text == "far_field")
        return {SchemeKind::FarField, 0};
    if (text == "ls" || text == "ls-estimation" || text == "ls_estimation")
        return {SchemeKind::LsEstimation, 0};
    if (text == "two-phase" || text == "two_phase")
        return {SchemeKind::TwoPhase, 0};
    const auto colon = text.find(':');
    if (colon != std::string::npos)
    {
        const std::string base = text.substr(0, colon);
        if (base == "two-phase" || base == "two_phase")
        {
            int k = 0;
            try
            {
                std::size_t used = 0;
                k = std::stoi(text.substr(colon + 1), &used);
                if (used != text.size() - colon - 1)
                    k = 0;
            }
            catch (const std::exception&)
            {
                k = 0;
            }
            if (k < 1)
                throw std::invalid_argument("scheme '" + text +
                                            "': K must be a positive integer");
            return {SchemeKind::TwoPhase, k};
        }
    }
    throw std::invalid_argument("unknown scheme '" + text + "'");
}

std::vector<SchemeSpec> parse_scheme_list(const std::vector<std::string>& names)
{
    std::vector<SchemeSpec> out;
    out.reserve(names.size());
    for (const auto& name : names)
        out.push_back(parse_scheme(name));
    if (out.empty())
        throw std::invalid_argument("scheme list is empty");
    return out;
}

double reference_snr(const SystemConfig& cfg, double distance_m)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("reference_snr: distance must be positive");
    return cfg.tx_power_w * cfg.ref_gain * cfg.num_antennas /
           (distance_m * distance_m * cfg.noise_power_w);
}

double tx_power_for_snr(const SystemConfig& cfg, double snr_linear, double distance_m)
{
    if (!(snr_linear > 0.0))
        throw std::invalid_argument("tx_power_for_snr: SNR must be positive");
    return snr_linear * distance_m * distance_m * cfg.noise_power_w /
           (cfg.ref_gain * cfg.num_antennas);
}

double achievable_rate(const UserLocation& truth, const ComplexVector& beamformer,
                       const SystemConfig& cfg)
{
    const auto b = near_steering(truth, cfg);
    const double gain2 = std::norm(inner_product(b, beamformer));
    const double snr = cfg.tx_power_w * cfg.ref_gain * cfg.num_antennas * gain2 /
                       (truth.distance_m * truth.distance_m * cfg.noise_power_w);
    return std::log2(1.0 + snr);
}

UserLocation draw_user(RandomStream& rng, const RangeSpec& distance, const AngleSpec& angle)
{
    if (!(distance.lo > 0.0) || distance.hi < distance.lo)
        throw std::invalid_argument("draw_user: invalid distance range");
    UserLocation loc;
    loc.theta = angle.is_uniform ? rng.uniform(-1.0, 1.0) : angle.value;
    loc.distance_m = distance.is_fixed() ? distance.lo : rng.uniform(distance.lo, distance.hi);
    loc.validate();
    return loc;
}

namespace {

int resolve_thread_count(int requested, long trials)
{
    int threads = requested;
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    if (static_cast<long>(threads) > trials)
        threads = static_cast<int>(trials);
    return threads;
}

/// Runs fn(trial) for trial in [0, trials); results must be written into
/// preallocated slots so scheduling cannot affect aggregation order.
void parallel_trials(long trials, int threads, const std::function<void(long)>& fn)
{
    if (threads <= 1)
    {
        for (long t = 0; t < trials; ++t)
            fn(t);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;)
            {
                const long t = next.fetch_add(1);
                if (t >= trials)
                    return;
                fn(t);
            }
        });
    for (auto& th : pool)
        th.join();
}

TrialRecord::SchemeResult run_scheme(const SchemeSpec& scheme, const ChannelVector& channel,
                                     const FarFieldCodebook& farfield, const PolarCodebook& polar,
                                     const SystemConfig& cfg, const CodewordId& oracle,
                                     RandomStream& rng, std::vector<ReceivedPilot>* trace = nullptr)
{
    TrialRecord::SchemeResult res;
    TrainingOutcome outcome;
    switch (scheme.kind)
    {
    case SchemeKind::PerfectCsi:
        // v = b(theta, r): unit beam gain by construction, so the rate is
        // exactly log2(1 + reference SNR).
        res.rate_bps_hz = std::log2(1.0 + reference_snr(cfg, channel.truth.distance_m));
        res.pilots_used = 0;
        return res;
    case SchemeKind::PolarExhaustive:
        outcome = polar_exhaustive(channel, polar, cfg, rng, trace);
        break;
    case SchemeKind::TwoPhase:
        outcome = two_phase_training(channel, farfield, polar, cfg, rng, scheme.num_candidates,
                                     trace);
        break;
    case SchemeKind::FarField:
        outcome = far_field_exhaustive(channel, farfield, cfg, rng, trace);
        break;
    case SchemeKind::LsEstimation:
        outcome = ls_channel_estimation(channel, farfield, cfg, rng, nullptr, trace);
        break;
    }
    res.selected = outcome.selected;
    res.pilots_used = outcome.pilots_used;
    res.rate_bps_hz = achievable_rate(channel.truth, outcome.beamformer, cfg);
    res.success = outcome.selected && *outcome.selected == oracle;
    return res;
}

struct SweepContext
{
    const SystemConfig& cfg;
    const std::vector<SchemeSpec>& schemes;
    const FarFieldCodebook& farfield;
    const PolarCodebook& polar;
    std::uint64_t seed;
    long trials;
    int threads;
};

SweepPoint run_point(const SweepContext& ctx, std::size_t point_index, double sweep_value,
                     const RangeSpec& distance, const AngleSpec& angle, bool invert_power_for_snr)
{
    SweepPoint point;
    point.sweep_value = sweep_value;
    point.trials.resize(ctx.trials);

    parallel_trials(ctx.trials, ctx.threads, [&](long t) {
        const std::uint64_t trial_seed =
            derive_seed(ctx.seed, static_cast<std::uint64_t>(point_index),
                        static_cast<std::uint64_t>(t));
        RandomStream user_rng(derive_seed(trial_seed, 0));
        TrialRecord rec;
        rec.truth = draw_user(user_rng, distance, angle);

        SystemConfig trial_cfg = ctx.cfg;
        if (invert_power_for_snr)
            trial_cfg.tx_power_w = tx_power_for_snr(
                ctx.cfg, std::pow(10.0, sweep_value / 10.0), rec.truth.distance_m);

        const ChannelVector channel = synthesize_channel(rec.truth, trial_cfg);
        rec.oracle = oracle_best_codeword(channel, ctx.polar);

        rec.results.reserve(ctx.schemes.size());
        for (std::size_t i = 0; i < ctx.schemes.size(); ++i)
        {
            RandomStream scheme_rng(derive_seed(trial_seed, i + 1));
            rec.results.push_back(run_scheme(ctx.schemes[i], channel, ctx.farfield, ctx.polar,
                                             trial_cfg, rec.oracle, scheme_rng));
        }
        point.trials[t] = std::move(rec);
    });

    // Deterministic aggregation in trial order.
    point.per_scheme.resize(ctx.schemes.size());
    for (std::size_t i = 0; i < ctx.schemes.size(); ++i)
    {
        auto& agg = point.per_scheme[i];
        agg.scheme = ctx.schemes[i].label(ctx.cfg);
        double rate_sum = 0.0;
        long successes = 0;
        bool selects = false;
        for (const auto& rec : point.trials)
        {
            const auto& res = rec.results[i];
            rate_sum += res.rate_bps_hz;
            successes += res.success ? 1 : 0;
            selects = selects || res.selected.has_value();
            agg.overhead = res.pilots_used;
        }
        agg.mean_rate_bps_hz = rate_sum / static_cast<double>(ctx.trials);
        agg.success_rate = selects ? static_cast<double>(successes) / static_cast<double>(ctx.trials)
                                   : std::numeric_limits<double>::quiet_NaN();
    }
    return point;
}

struct Codebooks
{
    FarFieldCodebook farfield_storage;
    PolarCodebook polar_storage;

    const FarFieldCodebook& farfield(const SweepOptions& opts) const
    {
        return opts.farfield ? *opts.farfield : farfield_storage;
    }
    const PolarCodebook& polar(const SweepOptions& opts) const
    {
        return opts.polar ? *opts.polar : polar_storage;
    }
};

Codebooks resolve_codebooks(const SystemConfig& cfg, const SweepOptions& opts)
{
    Codebooks books;
    if (!opts.farfield)
        books.farfield_storage = build_far_codebook(cfg);
    if (!opts.polar)
        books.polar_storage = build_polar_codebook(cfg);

    const auto& polar = books.polar(opts);
    if (polar.num_angles() != cfg.num_antennas)
        throw std::invalid_argument(
            "polar codebook covers " + std::to_string(polar.num_angles()) +
            " angles but the config has " + std::to_string(cfg.num_antennas) + " antennas");
    return books;
}

SweepReport run_sweep(const SystemConfig& cfg, const std::string& kind,
                      const std::vector<double>& values, long trials,
                      const std::vector<SchemeSpec>& schemes, std::uint64_t seed,
                      const SweepOptions& opts)
{
    cfg.validate();
    if (values.empty())
        throw std::invalid_argument("sweep: no sweep points given");
    if (trials < 1)
        throw std::invalid_argument("sweep: trials must be >= 1");
    if (schemes.empty())
        throw std::invalid_argument("sweep: no schemes selected");

    const bool snr_sweep = (kind == "snr");
    const Codebooks books = resolve_codebooks(cfg, opts);
    const int threads = resolve_thread_count(opts.threads, trials);

    SweepReport report;
    report.sweep_kind = kind;
    report.seed = seed;
    report.trials_per_point = trials;
    for (const auto& s : schemes)
        report.scheme_labels.push_back(s.label(cfg));
    if (snr_sweep)
    {
        report.metadata.emplace_back("user_distance_m", format_double(opts.snr_fixed_distance_m));
        report.metadata.emplace_back("power_policy", "inverted_from_reference_snr");
    }
    else
        report.metadata.emplace_back("tx_power_w", format_double(cfg.tx_power_w));
    report.metadata.emplace_back(
        "angle", opts.angle.is_uniform ? "uniform[-1,1]" : format_double(opts.angle.value));

    const SweepContext ctx{cfg,  schemes, books.farfield(opts), books.polar(opts),
                           seed, trials,  threads};
    report.points.reserve(values.size());
    for (std::size_t p = 0; p < values.size(); ++p)
    {
        const RangeSpec distance = snr_sweep ? RangeSpec::fixed(opts.snr_fixed_distance_m)
                                             : RangeSpec::fixed(values[p]);
        auto point = run_point(ctx, p, values[p], distance, opts.angle, snr_sweep);
        if (!opts.keep_trials)
            point.trials.clear();
        report.points.push_back(std::move(point));
        if (opts.progress)
            opts.progress(static_cast<int>(p) + 1, static_cast<int>(values.size()));
    }
    return report;
}

} // namespace

SweepReport run_snr_sweep(const SystemConfig& cfg, const std::vector<double>& snr_db_points,
                          long trials, const std::vector<SchemeSpec>& schemes, std::uint64_t seed,
                          const SweepOptions& opts)
{
    return run_sweep(cfg, "snr", snr_db_points, trials, schemes, seed, opts);
}

SweepReport run_distance_sweep(const SystemConfig& cfg, const std::vector<double>& distances_m,
                               long trials, const std::vector<SchemeSpec>& schemes,
                               std::uint64_t seed, const SweepOptions& opts)
{
    for (double d : distances_m)
        if (!(d > 0.0))
            throw std::invalid_argument("sweep: distances must be positive");
    return run_sweep(cfg, "distance", distances_m, trials, schemes, seed, opts);
}

SingleRunResult run_single(const SystemConfig& cfg, const UserLocation& loc,
                           const std::vector<SchemeSpec>& schemes, std::uint64_t seed,
                           const SweepOptions& opts)
{
    cfg.validate();
    loc.validate();
    if (schemes.empty())
        throw std::invalid_argument("run_single: no schemes selected");

    const Codebooks books = resolve_codebooks(cfg, opts);
    const FarFieldCodebook& farfield = books.farfield(opts);
    const PolarCodebook& polar = books.polar(opts);

    SingleRunResult out;
    out.report.sweep_kind = "single";
    out.report.seed = seed;
    out.report.trials_per_point = 1;
    out.report.metadata.emplace_back("theta", format_double(loc.theta));
    out.report.metadata.emplace_back("distance_m", format_double(loc.distance_m));

    SweepPoint point;
    point.sweep_value = loc.distance_m;

    const ChannelVector channel = synthesize_channel(loc, cfg);
    TrialRecord rec;
    rec.truth = loc;
    rec.oracle = oracle_best_codeword(channel, polar);

    const std::uint64_t trial_seed = derive_seed(seed, 0, 0);
    for (std::size_t i = 0; i < schemes.size(); ++i)
    {
        const std::string label = schemes[i].label(cfg);
        out.report.scheme_labels.push_back(label);
        RandomStream scheme_rng(derive_seed(trial_seed, i + 1));
        std::vector<ReceivedPilot> trace;
        auto res = run_scheme(schemes[i], channel, farfield, polar, cfg, rec.oracle,
                              scheme_rng, &trace);
        SchemeAggregate agg;
        agg.scheme = label;
        agg.success_rate = res.selected
                               ? (res.success ? 1.0 : 0.0)
                               : std::numeric_limits<double>::quiet_NaN();
        agg.mean_rate_bps_hz = res.rate_bps_hz;
        agg.overhead = res.pilots_used;
        point.per_scheme.push_back(agg);
        rec.results.push_back(std::move(res));
        out.traces.emplace_back(label, std::move(trace));
    }
    point.trials.push_back(std::move(rec));
    out.report.points.push_back(std::move(point));
    return out;
}

namespace {

ComplexVector source_vector(double theta, double distance_m, const SystemConfig& cfg)
{
    if (std::isinf(distance_m))
        return far_steering(theta, cfg);
    UserLocation loc{theta, distance_m};
    loc.validate();
    return near_steering(loc, cfg);
}

} // namespace

std::vector<double> beam_gain_profile(double theta, double distance_m,
                                      const FarFieldCodebook& codebook, const SystemConfig& cfg)
{
    const auto u = source_vector(theta, distance_m, cfg);
    std::vector<double> gains;
    gains.reserve(codebook.codewords.size());
    for (const auto& w : codebook.codewords)
        gains.push_back(beam_gain(u, w));
    return gains;
}

std::vector<double> beam_gain_profile(double theta, double distance_m,
                                      const std::vector<double>& omegas, const SystemConfig& cfg)
{
    const auto u = source_vector(theta, distance_m, cfg);
    std::vector<double> gains;
    gains.reserve(omegas.size());
    for (double omega : omegas)
        gains.push_back(beam_gain(u, far_steering(omega, cfg)));
    return gains;
}

double recompute_success_rate(const SweepPoint& point, std::size_t scheme_index)
{
    if (point.trials.empty())
        throw std::invalid_argument("recompute_success_rate: no trial records kept");
    long successes = 0;
    bool selects = false;
    for (const auto& rec : point.trials)
    {
        const auto& res = rec.results.at(scheme_index);
        selects = selects || res.selected.has_value();
        successes += res.success ? 1 : 0;
    }
    if (!selects)
        return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(successes) / static_cast<double>(point.trials.size());
}

} // namespace xlbt
