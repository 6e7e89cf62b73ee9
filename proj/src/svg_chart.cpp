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

#include "xlbt/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xlbt {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 190.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 70.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

struct Bounds
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v)
    {
        if (!std::isfinite(v))
            return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad()
    {
        if (lo > hi)
        {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi)
        {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

void write_svg_chart(const ChartSpec& spec, const std::string& path)
{
    Bounds xb, yb;
    for (const auto& series : spec.series)
        for (const auto& [x, y] : series.points)
        {
            xb.include(x);
            if (std::isfinite(y))
                yb.include(y);
        }
    xb.pad();
    yb.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto x_px = [&](double x) { return kMarginLeft + (x - xb.lo) / (xb.hi - xb.lo) * plot_w; };
    const auto y_px = [&](double y) {
        return kMarginTop + plot_h - (y - yb.lo) / (yb.hi - yb.lo) * plot_h;
    };

    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    if (!spec.comment.empty())
        os << "<!-- " << xml_escape(spec.comment) << " -->\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
          "font-family=\"sans-serif\">"
       << xml_escape(spec.title) << "</text>\n";

    // axes
    os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
       << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
       << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i)
    {
        const double fx = xb.lo + (xb.hi - xb.lo) * i / kTicks;
        const double fy = yb.lo + (yb.hi - yb.lo) * i / kTicks;
        const double px = x_px(fx);
        const double py = y_px(fy);
        os << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
           << "\" y2=\"" << kMarginTop + plot_h + 6 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 22
           << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << fmt(fx)
           << "</text>\n";
        os << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
           << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">" << fmt(fy)
           << "</text>\n";
    }

    os << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
       << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
       << xml_escape(spec.x_label) << "</text>\n";
    os << "<text x=\"22\" y=\"" << kMarginTop + plot_h / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" transform=\"rotate(-90 22 "
       << kMarginTop + plot_h / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";

    std::size_t color = 0;
    double legend_y = kMarginTop + 10.0;
    for (const auto& series : spec.series)
    {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++color;

        std::ostringstream pts;
        for (const auto& [x, y] : series.points)
        {
            if (!std::isfinite(y) || !std::isfinite(x))
                continue;
            pts << fmt(x_px(x)) << ',' << fmt(y_px(y)) << ' ';
        }
        os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\""
           << pts.str() << "\"/>\n";

        const double lx = kMarginLeft + plot_w + 16;
        os << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 24 << "\" y2=\""
           << legend_y << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4
           << "\" font-size=\"12\" font-family=\"sans-serif\">" << xml_escape(series.name)
           << "</text>\n";
        legend_y += 20.0;
    }

    os << "</svg>\n";
    if (!os.flush())
        throw std::runtime_error("write failed: " + path);
}

} // namespace xlbt
