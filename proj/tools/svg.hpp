#pragma once

// Minimal static SVG line charts: good enough to eyeball a CSV, nothing more.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace svgplot {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

inline void write_chart(const std::string& path, const std::string& title,
                        const std::string& x_label, const std::vector<Series>& series) {
    constexpr int W = 860, H = 520, ML = 70, MR = 20, MT = 40, MB = 50;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, s.y[k]);
            ymax = std::max(ymax, s.y[k]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ofstream os(path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
       << "' viewBox='0 0 " << W << ' ' << H << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
       << "</text>\n";

    // frame and ticks
    os << "<rect x='" << ML << "' y='" << MT << "' width='" << W - ML - MR << "' height='"
       << H -MT - MB << "' fill='none' stroke='#333'/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + k * (xmax - xmin) / 5, yv = ymin + k * (ymax - ymin) / 5;
        os << "<text x='" << px(xv) << "' y='" << H - MB + 18
           << "' text-anchor='middle' font-size='11'>" << static_cast<float>(xv)
           << "</text>\n"
           << "<text x='" << ML - 8 << "' y='" << py(yv) + 4
           << "' text-anchor='end' font-size='11'>" << static_cast<float>(yv) << "</text>\n";
    }
    os << "<text x='" << W / 2 << "' y='" << H - 12
       << "' text-anchor='middle' font-size='13'>" << x_label << "</text>\n";

    for (std::size_t j = 0; j < series.size(); ++j) {
        const char* color = palette[j % 6];
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t k = 0; k < series[j].x.size(); ++k)
            os << px(series[j].x[k]) << ',' << py(series[j].y[k]) << ' ';
        os << "'/>\n"
           << "<text x='" << W - MR - 8 << "' y='" << MT + 18 + 16 * j
           << "' text-anchor='end' font-size='12' fill='" << color << "'>" << series[j].name
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace svgplot
