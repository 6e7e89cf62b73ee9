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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xlbt/config_io.hpp"

namespace py = pybind11;
using namespace xlbt;

namespace {

std::vector<SchemeSpec> schemes_from_names(const std::vector<std::string>& names)
{
    return parse_scheme_list(names);
}

} // namespace

PYBIND11_MODULE(_xlbt, m)
{
    m.doc() = "near-field beam training simulator for extremely large-scale arrays";

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("num_antennas", &SystemConfig::num_antennas)
        .def_readwrite("carrier_freq_hz", &SystemConfig::carrier_freq_hz)
        .def_readwrite("ref_gain", &SystemConfig::ref_gain)
        .def_readwrite("tx_power_w", &SystemConfig::tx_power_w)
        .def_readwrite("noise_power_w", &SystemConfig::noise_power_w)
        .def_readwrite("coherence_param", &SystemConfig::coherence_param)
        .def_readwrite("gain_threshold", &SystemConfig::gain_threshold)
        .def_readwrite("num_candidates", &SystemConfig::num_candidates)
        .def_readwrite("distance_samples", &SystemConfig::distance_samples)
        .def_readwrite("min_sample_distance_m", &SystemConfig::min_sample_distance_m)
        .def("wavelength_m", &SystemConfig::wavelength_m)
        .def("antenna_spacing_m", &SystemConfig::antenna_spacing_m)
        .def("aperture_m", &SystemConfig::aperture_m)
        .def("validate", &SystemConfig::validate);

    py::class_<UserLocation>(m, "UserLocation")
        .def(py::init<double, double>(), py::arg("theta"), py::arg("distance_m"))
        .def_readwrite("theta", &UserLocation::theta)
        .def_readwrite("distance_m", &UserLocation::distance_m);

    py::class_<ChannelVector>(m, "ChannelVector")
        .def_readonly("vector", &ChannelVector::vector)
        .def_readonly("gain", &ChannelVector::gain)
        .def_readonly("truth", &ChannelVector::truth);

    py::class_<CodewordId>(m, "CodewordId")
        .def(py::init<int, int>(), py::arg("angle_index"), py::arg("distance_index"))
        .def_readwrite("angle_index", &CodewordId::angle_index)
        .def_readwrite("distance_index", &CodewordId::distance_index)
        .def("__eq__", [](const CodewordId& a, const CodewordId& b) { return a == b; })
        .def("__repr__", [](const CodewordId& id) {
            return "CodewordId(" + std::to_string(id.angle_index) + ", " +
                   std::to_string(id.distance_index) + ")";
        });

    py::class_<FarFieldCodebook>(m, "FarFieldCodebook")
        .def_readonly("angles", &FarFieldCodebook::angles)
        .def_readonly("codewords", &FarFieldCodebook::codewords)
        .def("size", &FarFieldCodebook::size);

    py::class_<PolarCodebook>(m, "PolarCodebook")
        .def_readonly("angles", &PolarCodebook::angles)
        .def_readonly("threshold_distance_m", &PolarCodebook::threshold_distance_m)
        .def("num_angles", &PolarCodebook::num_angles)
        .def("total_codewords", &PolarCodebook::total_codewords)
        .def("samples_at", &PolarCodebook::samples_at, py::arg("angle_index"))
        .def("codeword", &PolarCodebook::codeword, py::arg("id"))
        .def("distance_m", &PolarCodebook::distance_m, py::arg("id"));

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", py::overload_cast<>(&RandomStream::uniform))
        .def("gaussian", &RandomStream::gaussian);

    py::class_<TrainingOutcome>(m, "TrainingOutcome")
        .def_readonly("selected", &TrainingOutcome::selected)
        .def_readonly("pilots_used", &TrainingOutcome::pilots_used)
        .def_readonly("beamformer", &TrainingOutcome::beamformer);

    py::class_<SchemeAggregate>(m, "SchemeAggregate")
        .def_readonly("scheme", &SchemeAggregate::scheme)
        .def_readonly("success_rate", &SchemeAggregate::success_rate)
        .def_readonly("mean_rate_bps_hz", &SchemeAggregate::mean_rate_bps_hz)
        .def_readonly("overhead", &SchemeAggregate::overhead);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("sweep_value", &SweepPoint::sweep_value)
        .def_readonly("per_scheme", &SweepPoint::per_scheme);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("sweep_kind", &SweepReport::sweep_kind)
        .def_readonly("scheme_labels", &SweepReport::scheme_labels)
        .def_readonly("points", &SweepReport::points)
        .def_readonly("seed", &SweepReport::seed)
        .def_readonly("trials_per_point", &SweepReport::trials_per_point)
        .def_readonly("metadata", &SweepReport::metadata);

    // geometry and channel
    m.def("antenna_offset", &antenna_offset, py::arg("antenna_index"), py::arg("cfg"));
    m.def("per_antenna_distance", &per_antenna_distance, py::arg("antenna_index"), py::arg("loc"),
          py::arg("cfg"));
    m.def("near_steering", &near_steering, py::arg("loc"), py::arg("cfg"));
    m.def("far_steering", &far_steering, py::arg("theta"), py::arg("cfg"));
    m.def("synthesize_channel", &synthesize_channel, py::arg("loc"), py::arg("cfg"));
    m.def("beam_gain", &beam_gain, py::arg("u"), py::arg("w"));
    m.def("rayleigh_distance", &rayleigh_distance, py::arg("aperture_m"), py::arg("wavelength_m"));

    // codebooks
    m.def("grid_angles", &grid_angles, py::arg("num_antennas"));
    m.def("build_far_codebook", &build_far_codebook, py::arg("cfg"));
    m.def("build_polar_codebook", py::overload_cast<const SystemConfig&>(&build_polar_codebook),
          py::arg("cfg"));
    m.def("threshold_distance", &threshold_distance, py::arg("cfg"));
    m.def("sample_distances", &sample_distances, py::arg("theta"), py::arg("count"), py::arg("cfg"));
    m.def("overhead_exhaustive", py::overload_cast<const SystemConfig&>(&overhead_exhaustive),
          py::arg("cfg"));
    m.def("overhead_two_phase", py::overload_cast<const SystemConfig&>(&overhead_two_phase),
          py::arg("cfg"));
    m.def("export_codebook_csv",
          py::overload_cast<const PolarCodebook&, const std::string&>(&export_codebook_csv),
          py::arg("codebook"), py::arg("path"));
    m.def("import_codebook_csv", &import_codebook_csv, py::arg("path"));

    // training schemes
    m.def(
        "far_field_exhaustive",
        [](const ChannelVector& ch, const FarFieldCodebook& cb, const SystemConfig& cfg,
           RandomStream& rng) { return far_field_exhaustive(ch, cb, cfg, rng); },
        py::arg("channel"), py::arg("codebook"), py::arg("cfg"), py::arg("rng"));
    m.def(
        "polar_exhaustive",
        [](const ChannelVector& ch, const PolarCodebook& cb, const SystemConfig& cfg,
           RandomStream& rng) { return polar_exhaustive(ch, cb, cfg, rng); },
        py::arg("channel"), py::arg("codebook"), py::arg("cfg"), py::arg("rng"));
    m.def(
        "two_phase_training",
        [](const ChannelVector& ch, const FarFieldCodebook& far, const PolarCodebook& polar,
           const SystemConfig& cfg, RandomStream& rng, int num_candidates) {
            return two_phase_training(ch, far, polar, cfg, rng, num_candidates);
        },
        py::arg("channel"), py::arg("farfield"), py::arg("polar"), py::arg("cfg"), py::arg("rng"),
        py::arg("num_candidates") = 0);
    m.def("oracle_best_codeword", &oracle_best_codeword, py::arg("channel"), py::arg("codebook"));
    m.def(
        "ls_channel_estimation",
        [](const ChannelVector& ch, const FarFieldCodebook& cb, const SystemConfig& cfg,
           RandomStream& rng) { return ls_channel_estimation(ch, cb, cfg, rng); },
        py::arg("channel"), py::arg("codebook"), py::arg("cfg"), py::arg("rng"));

    // harness
    m.def("reference_snr", &reference_snr, py::arg("cfg"), py::arg("distance_m"));
    m.def("tx_power_for_snr", &tx_power_for_snr, py::arg("cfg"), py::arg("snr_linear"),
          py::arg("distance_m"));
    m.def("achievable_rate", &achievable_rate, py::arg("truth"), py::arg("beamformer"),
          py::arg("cfg"));
    m.def(
        "run_snr_sweep",
        [](const SystemConfig& cfg, const std::vector<double>& points, long trials,
           const std::vector<std::string>& schemes, std::uint64_t seed, double user_distance_m,
           int threads) {
            SweepOptions opts;
            opts.snr_fixed_distance_m = user_distance_m;
            opts.threads = threads;
            opts.keep_trials = false;
            return run_snr_sweep(cfg, points, trials, schemes_from_names(schemes), seed, opts);
        },
        py::arg("cfg"), py::arg("snr_db_points"), py::arg("trials"), py::arg("schemes"),
        py::arg("seed"), py::arg("user_distance_m") = 10.0, py::arg("threads") = 1);
    m.def(
        "run_distance_sweep",
        [](const SystemConfig& cfg, const std::vector<double>& distances, long trials,
           const std::vector<std::string>& schemes, std::uint64_t seed, int threads) {
            SweepOptions opts;
            opts.threads = threads;
            opts.keep_trials = false;
            return run_distance_sweep(cfg, distances, trials, schemes_from_names(schemes), seed,
                                      opts);
        },
        py::arg("cfg"), py::arg("distances_m"), py::arg("trials"), py::arg("schemes"),
        py::arg("seed"), py::arg("threads") = 1);
    m.def("beam_gain_profile",
          py::overload_cast<double, double, const FarFieldCodebook&, const SystemConfig&>(
              &beam_gain_profile),
          py::arg("theta"), py::arg("distance_m"), py::arg("codebook"), py::arg("cfg"));

    m.attr("__version__") = "0.1.0";
    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
}
