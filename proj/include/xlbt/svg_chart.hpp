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

#include <string>
#include <utility>
#include <vector>

namespace xlbt {

/// One polyline of an SVG line chart. NaN points are skipped.
struct ChartSeries
{
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct ChartSpec
{
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
    /// Embedded verbatim as an XML comment (provenance: config hash, seed).
    std::string comment;
};

/// Writes a self-contained SVG 1.1 document: axes, tick labels, legend and
/// one polyline per series. No external dependencies or fonts required.
void write_svg_chart(const ChartSpec& spec, const std::string& path);

} // namespace xlbt
