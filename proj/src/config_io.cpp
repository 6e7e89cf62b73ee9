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
#include "xlbt/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace xlbt {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

// "a,b,c" or inclusive "start:step:stop"
std::vector<double> parse_point_list(const std::string& text, const std::string& context)
{
    const auto range_parts = split(text, ':');
    if (range_parts.size() == 3)
    {
        const double start = parse_double(range_parts[0]);
        const double step = parse_double(range_parts[1]);
        const double stop = parse_double(range_parts[2]);
        if (!(step > 0.0))
            throw ConfigError(context + ": range step must be positive");
        if (stop < start)
            throw ConfigError(context + ": range stop is below start");
        std::vector<double> out;
        for (double v = start; v <= stop + step * 1e-9; v += step)
            out.push_back(v);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        if (!item.empty())
            out.push_back(parse_double(item));
    if (out.empty())
        throw ConfigError(context + ": empty point list");
    return out;
}

struct FieldParser
{
    ExperimentConfig& cfg;
    const std::string& origin;
    long line_no;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
    }

    double num(const std::string& key, const std::string& value) const
    {
        try
        {
            return parse_double(value);
        }
        catch (const std::exception&)
        {
            fail("field '" + key + "': not a number: '" + value + "'");
        }
    }

    long integer(const std::string& key, const std::string& value) const
    {
        const double v = num(key, value);
        if (v != std::floor(v))
            fail("field '" + key + "': expected an integer, got '" + value + "'");
        return static_cast<long>(v);
    }

    bool apply(const std::string& key, const std::string& value) const
    {
        auto& sys = cfg.system;
        if (key == "num_antennas")
            sys.num_antennas = static_cast<int>(integer(key, value));
        else if (key == "carrier_freq_ghz")
            sys.carrier_freq_hz = num(key, value) * 1e9;
        else if (key == "beta_db")
            sys.ref_gain = db_to_linear(num(key, value));
        else if (key == "noise_power_dbm")
            sys.noise_power_w = dbm_to_watts(num(key, value));
        else if (key == "tx_power_dbm")
            sys.tx_power_w = dbm_to_watts(num(key, value));
        else if (key == "alpha_delta")
            sys.coherence_param = num(key, value);
        else if (key == "gain_threshold_rho")
            sys.gain_threshold = num(key, value);
        else if (key == "num_candidates_k")
            sys.num_candidates = static_cast<int>(integer(key, value));
        else if (key == "distance_samples_s")
            sys.distance_samples = static_cast<int>(integer(key, value));
        else if (key == "min_sample_distance_m")
            sys.min_sample_distance_m = num(key, value);
        else if (key == "sweep")
            cfg.sweep_kind = value;
        else if (key == "snr_db_points")
            cfg.snr_db_points = parse_point_list(value, "field 'snr_db_points'");
        else if (key == "distance_points_m")
            cfg.distance_points_m = parse_point_list(value, "field 'distance_points_m'");
        else if (key == "trials")
            cfg.trials = integer(key, value);
        else if (key == "seed")
        {
            try
            {
                std::size_t used = 0;
                cfg.seed = std::stoull(value, &used);
                if (used != value.size())
                    throw std::invalid_argument(value);
            }
            catch (const std::exception&)
            {
                fail("field 'seed': not an unsigned integer: '" + value + "'");
            }
        }
        else if (key == "schemes")
            cfg.schemes = split(value, ',');
        else if (key == "out_dir")
            cfg.output_dir = value;
        else if (key == "codebook_import")
            cfg.codebook_import = value;
        else if (key == "codebook_export")
            cfg.codebook_export = value;
        else if (key == "snr_sweep_distance_m")
            cfg.snr_sweep_distance_m = num(key, value);
        else if (key == "theta")
            cfg.single_theta = num(key, value);
        else if (key == "r")
            cfg.single_distance_m = num(key, value);
        else if (key == "threads")
            cfg.threads = static_cast<int>(integer(key, value));
        else
            return false;
        return true;
    }
};

} // namespace

void ExperimentConfig::validate() const
{
    try
    {
        system.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("field ") + e.what());
    }
    if (sweep_kind != "snr" && sweep_kind != "distance" && sweep_kind != "single")
        throw ConfigError("field 'sweep': must be one of snr, distance, single");
    if (trials < 1)
        throw ConfigError("field 'trials': must be >= 1");
    if (snr_db_points.empty())
        throw ConfigError("field 'snr_db_points': must not be empty");
    if (distance_points_m.empty())
        throw ConfigError("field 'distance_points_m': must not be empty");
    for (double d : distance_points_m)
        if (!(d > 0.0))
            throw ConfigError("field 'distance_points_m': distances must be positive");
    if (!(snr_sweep_distance_m > 0.0))
        throw ConfigError("field 'snr_sweep_distance_m': must be positive");
    if (!(single_theta >= -1.0 && single_theta <= 1.0))
        throw ConfigError("field 'theta': must lie in [-1, 1]");
    if (!(single_distance_m > 0.0))
        throw ConfigError("field 'r': must be positive");
    if (threads < 0)
        throw ConfigError("field 'threads': must be >= 0");
    for (const auto& s : schemes)
    {
        try
        {
            parse_scheme(s);
        }
        catch (const ConfigError&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            throw ConfigError(std::string("field 'schemes': ") + e.what());
        }
    }
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin)
{
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    long line_no = 0;
    while (std::getline(ss, line))
    {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        FieldParser parser{cfg, origin, line_no};
        if (eq == std::string::npos)
            parser.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            parser.fail("missing key");
        if (!parser.apply(key, value))
            parser.fail("unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::vector<std::string> default_scheme_names(const ExperimentConfig& cfg,
                                              const std::string& sweep_kind)
{
    if (!cfg.schemes.empty())
        return cfg.schemes;
    if (sweep_kind == "distance")
        return {"perfect-csi", "exhaustive", "two-phase", "far-field"};
    std::vector<std::string> names = {"perfect-csi", "exhaustive", "two-phase"};
    if (cfg.system.num_candidates != 1)
        names.push_back("two-phase:1");
    names.push_back("far-field");
    names.push_back("ls");
    return names;
}

std::string canonical_config_text(const ExperimentConfig& cfg)
{
    std::map<std::string, std::string> kv;
    const auto& sys = cfg.system;
    kv["num_antennas"] = std::to_string(sys.num_antennas);
    kv["carrier_freq_hz"] = format_double(sys.carrier_freq_hz);
    kv["ref_gain"] = format_double(sys.ref_gain);
    kv["tx_power_w"] = format_double(sys.tx_power_w);
    kv["noise_power_w"] = format_double(sys.noise_power_w);
    kv["alpha_delta"] = format_double(sys.coherence_param);
    kv["gain_threshold_rho"] = format_double(sys.gain_threshold);
    kv["num_candidates_k"] = std::to_string(sys.num_candidates);
    kv["distance_samples_s"] = std::to_string(sys.distance_samples);
    kv["min_sample_distance_m"] = format_double(sys.min_sample_distance_m);
    kv["sweep"] = cfg.sweep_kind;
    kv["trials"] = std::to_string(cfg.trials);
    kv["seed"] = std::to_string(cfg.seed);
    kv["snr_sweep_distance_m"] = format_double(cfg.snr_sweep_distance_m);
    kv["theta"] = format_double(cfg.single_theta);
    kv["r"] = format_double(cfg.single_distance_m);
    kv["codebook_import"] = cfg.codebook_import;

    std::string points;
    const auto& values =
        (cfg.sweep_kind == "distance") ? cfg.distance_points_m : cfg.snr_db_points;
    for (double v : values)
        points += format_double(v) + ",";
    kv["sweep_points"] = points;

    std::string schemes;
    for (const auto& s : default_scheme_names(cfg, cfg.sweep_kind))
        schemes += s + ",";
    kv["schemes"] = schemes;

    std::string out;
    for (const auto& [k, v] : kv)
        out += k + "=" + v + "\n";
    return out;
}

std::uint64_t config_hash(const ExperimentConfig& cfg)
{
    // FNV-1a 64
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config_text(cfg))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const char* ResultTable::header()
{
    return "sweep_value,scheme,success_rate,rate_bps_hz,overhead,trials,seed";
}

ResultTable build_result_table(const SweepReport& report)
{
    ResultTable table;
    for (const auto& point : report.points)
        for (const auto& agg : point.per_scheme)
        {
            ResultRow row;
            row.sweep_value = point.sweep_value;
            row.scheme = agg.scheme;
            row.success_rate = agg.success_rate;
            row.rate_bps_hz = agg.mean_rate_bps_hz;
            row.overhead = agg.overhead;
            row.trials = report.trials_per_point;
            row.seed = report.seed;
            table.rows.push_back(std::move(row));
        }
    return table;
}

namespace {

std::string hash_hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_provenance(std::ostream& os, const SweepReport& report, const ExperimentConfig& cfg)
{
    os << "# xlbt results\n";
    os << "# config_hash=" << hash_hex(config_hash(cfg)) << "\n";
    os << "# seed=" << report.seed << "\n";
    os << "# sweep=" << report.sweep_kind << "\n";
    for (const auto& [k, v] : report.metadata)
        os << "# " << k << "=" << v << "\n";
}

std::string provenance_comment(const SweepReport& report, const ExperimentConfig& cfg)
{
    return "config_hash=" + hash_hex(config_hash(cfg)) + " seed=" + std::to_string(report.seed);
}

ChartSpec metric_chart(const SweepReport& report, const ExperimentConfig& cfg, bool success_metric)
{
    ChartSpec spec;
    spec.title = success_metric ? "Beam training success rate" : "Achievable rate";
    spec.x_label = report.sweep_kind == "distance" ? "BS-user distance (m)" : "reference SNR (dB)";
    if (report.sweep_kind == "single")
        spec.x_label = "BS-user distance (m)";
    spec.y_label = success_metric ? "success rate" : "rate (bits/s/Hz)";
    spec.comment = provenance_comment(report, cfg);

    for (std::size_t i = 0; i < report.scheme_labels.size(); ++i)
    {
        ChartSeries series;
        series.name = report.scheme_labels[i];
        bool any_finite = false;
        for (const auto& point : report.points)
        {
            const auto& agg = point.per_scheme[i];
            const double y = success_metric ? agg.success_rate : agg.mean_rate_bps_hz;
            series.points.emplace_back(point.sweep_value, y);
            any_finite = any_finite || std::isfinite(y);
        }
        if (any_finite)
            spec.series.push_back(std::move(series));
    }
    return spec;
}

} // namespace

std::vector<std::string> emit_results(const SweepReport& report, const ExperimentConfig& cfg,
                                      const std::string& outdir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + outdir + "': " + ec.message());

    std::vector<std::string> paths;
    const std::string csv_path = (fs::path(outdir) / "results.csv").string();
    {
        std::ofstream os(csv_path);
        if (!os)
            throw std::runtime_error("cannot open for writing: " + csv_path);
        write_provenance(os, report, cfg);
        os << ResultTable::header() << "\n";
        for (const auto& row : build_result_table(report).rows)
        {
            os << format_double(row.sweep_value) << ',' << row.scheme << ','
               << format_double(row.success_rate) << ',' << format_double(row.rate_bps_hz) << ','
               << row.overhead << ',' << row.trials << ',' << row.seed << "\n";
        }
        if (!os.flush())
            throw std::runtime_error("write failed: " + csv_path);
    }
    paths.push_back(csv_path);

    const std::string success_path = (fs::path(outdir) / "success_rate.svg").string();
    write_svg_chart(metric_chart(report, cfg, true), success_path);
    paths.push_back(success_path);

    const std::string rate_path = (fs::path(outdir) / "rate.svg").string();
    write_svg_chart(metric_chart(report, cfg, false), rate_path);
    paths.push_back(rate_path);
    return paths;
}

ResultTable parse_results_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open results file: " + path);

    ResultTable table;
    std::string line;
    bool saw_header = false;
    long line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        if (!saw_header)
        {
            if (line != ResultTable::header())
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": unexpected results header");
            saw_header = true;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 7)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong column count");
        ResultRow row;
        row.sweep_value = parse_double(cells[0]);
        row.scheme = cells[1];
        row.success_rate = parse_double(cells[2]);
        row.rate_bps_hz = parse_double(cells[3]);
        row.overhead = std::stol(cells[4]);
        row.trials = std::stol(cells[5]);
        row.seed = std::stoull(cells[6]);
        table.rows.push_back(std::move(row));
    }
    if (!saw_header)
        throw std::runtime_error(path + ": missing results header");
    return table;
}

std::string emit_pilot_trace(const SingleRunResult& result, const ExperimentConfig& cfg,
                             const std::string& outdir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + outdir + "': " + ec.message());

    const std::string path = (fs::path(outdir) / "pilot_trace.csv").string();
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    write_provenance(os, result.report, cfg);
    os << "scheme,pilot_index,angle_index,distance_index,re_y,im_y,power\n";
    for (const auto& [scheme, pilots] : result.traces)
    {
        long idx = 0;
        for (const auto& p : pilots)
            os << scheme << ',' << idx++ << ',' << p.id.angle_index << ',' << p.id.distance_index
               << ',' << format_double(p.sample.real()) << ',' << format_double(p.sample.imag())
               << ',' << format_double(p.power) << "\n";
    }
    if (!os.flush())
        throw std::runtime_error("write failed: " + path);
    return path;
}

std::vector<std::string> emit_beam_gains(const std::vector<GainProfile>& profiles,
                                         const ExperimentConfig& cfg, const std::string& outdir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + outdir + "': " + ec.message());

    std::vector<std::string> paths;
    const std::string csv_path = (fs::path(outdir) / "beamgain.csv").string();
    {
        std::ofstream os(csv_path);
        if (!os)
            throw std::runtime_error("cannot open for writing: " + csv_path);
        os << "# xlbt beam gains\n";
        os << "# config_hash=" << hash_hex(config_hash(cfg)) << "\n";
        os << "# seed=" << cfg.seed << "\n";
        os << "theta,r,omega,gain\n";
        for (const auto& p : profiles)
            for (std::size_t i = 0; i < p.omegas.size(); ++i)
                os << format_double(p.theta) << ','
                   << (std::isinf(p.distance_m) ? "inf" : format_double(p.distance_m)) << ','
                   << format_double(p.omegas[i]) << ',' << format_double(p.gains[i]) << "\n";
        if (!os.flush())
            throw std::runtime_error("write failed: " + csv_path);
    }
    paths.push_back(csv_path);

    ChartSpec spec;
    spec.title = "Far-field beam gain vs spatial angle";
    spec.x_label = "spatial angle";
    spec.y_label = "normalized beam gain";
    spec.comment = "config_hash=" + hash_hex(config_hash(cfg)) + " seed=" + std::to_string(cfg.seed);
    for (const auto& p : profiles)
    {
        ChartSeries series;
        series.name = "theta=" + format_double(p.theta) + " r=" +
                      (std::isinf(p.distance_m) ? std::string("inf") : format_double(p.distance_m));
        for (std::size_t i = 0; i < p.omegas.size(); ++i)
            series.points.emplace_back(p.omegas[i], p.gains[i]);
        spec.series.push_back(std::move(series));
    }
    const std::string svg_path = (fs::path(outdir) / "beamgain.svg").string();
    write_svg_chart(spec, svg_path);
    paths.push_back(svg_path);
    return paths;
}

} // namespace xlbt
