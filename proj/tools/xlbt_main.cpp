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

#include "xlbt/config_io.hpp"
#include "xlbt/format_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

using namespace xlbt;

struct CommonFlags
{
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> schemes;
    std::uint64_t seed = 0;
    long trials = 0;
    bool has_seed = false;
    bool has_trials = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags)
{
    cmd->add_option("--config", flags.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "master RNG seed")->check(CLI::NonNegativeNumber);
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per sweep point");
    cmd->add_option("--schemes", flags.schemes,
                    "comma-separated scheme list (perfect-csi, exhaustive, two-phase[:K], "
                    "far-field, ls)")
        ->delimiter(',');
}

ExperimentConfig make_config(const CommonFlags& flags, CLI::App* cmd)
{
    ExperimentConfig cfg =
        flags.config_path.empty() ? ExperimentConfig{} : load_config(flags.config_path);
    if (cmd->count("--seed"))
        cfg.seed = flags.seed;
    if (cmd->count("--trials"))
    {
        if (flags.trials < 1)
            throw ConfigError("field 'trials': must be >= 1");
        cfg.trials = flags.trials;
    }
    if (cmd->count("--schemes"))
        cfg.schemes = flags.schemes;
    if (cmd->count("--out"))
        cfg.output_dir = flags.out_dir;
    cfg.validate();
    return cfg;
}

int env_threads()
{
    const char* env = std::getenv("XLBT_THREADS");
    if (!env || !*env)
        return 0;
    return std::atoi(env);
}

SweepOptions make_options(const ExperimentConfig& cfg)
{
    SweepOptions opts;
    opts.snr_fixed_distance_m = cfg.snr_sweep_distance_m;
    opts.threads = cfg.threads > 0 ? cfg.threads : env_threads();
    opts.keep_trials = false;
    opts.progress = [](int done, int total) {
        std::cerr << "\rsweep point " << done << "/" << total << std::flush;
        if (done == total)
            std::cerr << "\n";
    };
    return opts;
}

struct ImportedBooks
{
    PolarCodebook polar;
    bool loaded = false;
};

ImportedBooks maybe_import(const ExperimentConfig& cfg)
{
    ImportedBooks books;
    if (!cfg.codebook_import.empty())
    {
        books.polar = import_codebook_csv(cfg.codebook_import);
        books.loaded = true;
        std::cerr << "imported polar codebook (" << books.polar.total_codewords()
                  << " codewords) from " << cfg.codebook_import << "\n";
    }
    return books;
}

void print_report_summary(const SweepReport& report)
{
    for (const auto& point : report.points)
    {
        std::cout << report.sweep_kind << " = " << format_double(point.sweep_value) << "\n";
        for (const auto& agg : point.per_scheme)
            std::cout << "  " << agg.scheme << ": success_rate=" << format_double(agg.success_rate)
                      << " rate=" << format_double(agg.mean_rate_bps_hz)
                      << " overhead=" << agg.overhead << "\n";
    }
}

int cmd_sweep(const CommonFlags& flags, CLI::App* cmd, const std::string& kind,
              const std::vector<double>& points_override)
{
    ExperimentConfig cfg = make_config(flags, cmd);
    cfg.sweep_kind = kind;
    if (!points_override.empty())
    {
        if (kind == "snr")
            cfg.snr_db_points = points_override;
        else
            cfg.distance_points_m = points_override;
        cfg.validate();
    }

    const auto schemes = parse_scheme_list(default_scheme_names(cfg, kind));
    auto opts = make_options(cfg);
    const auto books = maybe_import(cfg);
    if (books.loaded)
        opts.polar = &books.polar;

    const SweepReport report =
        (kind == "snr")
            ? run_snr_sweep(cfg.system, cfg.snr_db_points, cfg.trials, schemes, cfg.seed, opts)
            : run_distance_sweep(cfg.system, cfg.distance_points_m, cfg.trials, schemes, cfg.seed,
                                 opts);

    const auto paths = emit_results(report, cfg, cfg.output_dir);
    print_report_summary(report);
    for (const auto& p : paths)
        std::cout << "wrote " << p << "\n";
    return 0;
}

int cmd_codebook(const CommonFlags& flags, CLI::App* cmd, const std::string& kind)
{
    ExperimentConfig cfg = make_config(flags, cmd);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + cfg.output_dir +
                                 "': " + ec.message());

    std::string path = cfg.codebook_export;
    if (path.empty())
        path = (fs::path(cfg.output_dir) / ("codebook_" + kind + ".csv")).string();

    if (kind == "far")
    {
        const auto cb = build_far_codebook(cfg.system);
        export_codebook_csv(cb, path);
        std::cout << "wrote " << path << " (" << cb.size() << " codewords)\n";
    }
    else
    {
        const auto cb = build_polar_codebook(cfg.system);
        export_codebook_csv(cb, path);
        std::cout << "wrote " << path << " (" << cb.total_codewords() << " codewords, Z_delta="
                  << format_double(cb.threshold_distance_m) << " m)\n";
    }
    return 0;
}

int cmd_single(const CommonFlags& flags, CLI::App* cmd, double theta, double r)
{
    ExperimentConfig cfg = make_config(flags, cmd);
    cfg.sweep_kind = "single";
    if (cmd->count("--theta"))
        cfg.single_theta = theta;
    if (cmd->count("--r"))
        cfg.single_distance_m = r;
    cfg.validate();

    const auto schemes = parse_scheme_list(default_scheme_names(cfg, "single"));
    auto opts = make_options(cfg);
    const auto books = maybe_import(cfg);
    if (books.loaded)
        opts.polar = &books.polar;

    const UserLocation loc{cfg.single_theta, cfg.single_distance_m};
    const auto result = run_single(cfg.system, loc, schemes, cfg.seed, opts);

    const auto& rec = result.report.points[0].trials[0];
    std::cout << "user: theta=" << format_double(loc.theta)
              << " r=" << format_double(loc.distance_m) << " m\n";
    std::cout << "oracle codeword: angle_index=" << rec.oracle.angle_index
              << " distance_index=" << rec.oracle.distance_index << "\n";
    for (std::size_t i = 0; i < result.report.scheme_labels.size(); ++i)
    {
        const auto& res = rec.results[i];
        std::cout << "  " << result.report.scheme_labels[i] << ": ";
        if (res.selected)
            std::cout << "selected=(" << res.selected->angle_index << ","
                      << res.selected->distance_index << ") success=" << (res.success ? "yes" : "no")
                      << " ";
        std::cout << "pilots=" << res.pilots_used << " rate=" << format_double(res.rate_bps_hz)
                  << "\n";
    }

    auto paths = emit_results(result.report, cfg, cfg.output_dir);
    paths.push_back(emit_pilot_trace(result, cfg, cfg.output_dir));
    for (const auto& p : paths)
        std::cout << "wrote " << p << "\n";
    return 0;
}

int cmd_beamgain(const CommonFlags& flags, CLI::App* cmd, const std::vector<double>& thetas,
                 const std::vector<std::string>& r_texts, int grid)
{
    ExperimentConfig cfg = make_config(flags, cmd);

    std::vector<double> distances;
    for (const auto& text : r_texts)
    {
        const double r = parse_double(text);
        if (!std::isinf(r) && !(r > 0.0))
            throw ConfigError("field 'r': distances must be positive or inf");
        distances.push_back(r);
    }
    if (thetas.empty() || distances.empty())
        throw ConfigError("beamgain needs at least one --theta and one --r");

    std::vector<double> omegas;
    FarFieldCodebook codebook;
    if (grid > 0)
    {
        omegas.resize(grid);
        for (int i = 0; i < grid; ++i)
            omegas[i] = (grid == 1) ? 0.0 : -1.0 + 2.0 * i / (grid - 1);
    }
    else
    {
        codebook = build_far_codebook(cfg.system);
        omegas = codebook.angles;
    }

    std::vector<GainProfile> profiles;
    for (double theta : thetas)
        for (double r : distances)
        {
            GainProfile p;
            p.theta = theta;
            p.distance_m = r;
            p.omegas = omegas;
            p.gains = (grid > 0) ? beam_gain_profile(theta, r, omegas, cfg.system)
                                 : beam_gain_profile(theta, r, codebook, cfg.system);
            profiles.push_back(std::move(p));

            // 3 dB region summary over the emitted grid
            const auto& gains = profiles.back().gains;
            const double peak = *std::max_element(gains.begin(), gains.end());
            const double thr = cfg.system.gain_threshold * peak;
            int count = 0;
            std::vector<int> above;
            for (std::size_t i = 0; i < gains.size(); ++i)
                if (gains[i] > thr)
                {
                    ++count;
                    above.push_back(static_cast<int>(i) + 1);
                }
            double med = 0.0;
            if (!above.empty())
                med = (above.size() % 2 == 1)
                          ? above[above.size() / 2]
                          : (above[above.size() / 2 - 1] + above[above.size() / 2]) / 2.0;
            std::cout << "theta=" << format_double(theta) << " r="
                      << (std::isinf(r) ? std::string("inf") : format_double(r))
                      << ": peak=" << format_double(peak) << " |Psi|=" << count
                      << " floor(Med)=" << static_cast<int>(std::floor(med)) << "\n";
        }

    const auto paths = emit_beam_gains(profiles, cfg, cfg.output_dir);
    for (const auto& p : paths)
        std::cout << "wrote " << p << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"near-field beam training simulator for extremely large-scale arrays"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonFlags flags;

    auto* codebook = app.add_subcommand("codebook", "build and export a beam codebook");
    std::string kind = "polar";
    codebook->add_option("--kind", kind, "codebook kind: far | polar")
        ->check(CLI::IsMember({"far", "polar"}));
    add_common(codebook, flags);

    auto* sweep_snr = app.add_subcommand("sweep-snr", "Monte Carlo sweep over reference SNR");
    std::vector<double> snr_points;
    sweep_snr->add_option("--snr", snr_points, "SNR points in dB")->delimiter(',');
    add_common(sweep_snr, flags);

    auto* sweep_dist = app.add_subcommand("sweep-distance", "Monte Carlo sweep over user distance");
    std::vector<double> dist_points;
    sweep_dist->add_option("--distances", dist_points, "distances in m")->delimiter(',');
    add_common(sweep_dist, flags);

    auto* single = app.add_subcommand("single", "run every scheme once at one user location");
    double theta = 0.0, r = 10.0;
    single->add_option("--theta", theta, "user spatial angle in [-1, 1]");
    single->add_option("--r", r, "user distance in m");
    add_common(single, flags);

    auto* beamgain = app.add_subcommand("beamgain", "far-field beam gain profiles for (theta, r)");
    std::vector<double> bg_thetas;
    std::vector<std::string> bg_rs;
    int bg_grid = 0;
    beamgain->add_option("--theta", bg_thetas, "source spatial angles")->delimiter(',');
    beamgain->add_option("--r", bg_rs, "source distances in m ('inf' = planar)")->delimiter(',');
    beamgain->add_option("--grid", bg_grid,
                         "probe-angle count over [-1,1]; 0 = the codebook grid");
    add_common(beamgain, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (codebook->parsed())
            return cmd_codebook(flags, codebook, kind);
        if (sweep_snr->parsed())
            return cmd_sweep(flags, sweep_snr, "snr", snr_points);
        if (sweep_dist->parsed())
            return cmd_sweep(flags, sweep_dist, "distance", dist_points);
        if (single->parsed())
            return cmd_single(flags, single, theta, r);
        if (beamgain->parsed())
            return cmd_beamgain(flags, beamgain, bg_thetas, bg_rs, bg_grid);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
