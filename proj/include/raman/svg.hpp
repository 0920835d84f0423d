#pragma once

// Minimal SVG plots: a heatmap with colorbar and a multi-series line plot.
// Publication styling is out of scope; these exist so sweeps can be eyeballed.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "raman/io.hpp"

namespace raman {
namespace svg {

inline std::string color_viridis(double t) {
    // coarse 5-stop approximation of the viridis ramp
    static const double stops[5][3] = {{68, 1, 84},
                                       {59, 82, 139},
                                       {33, 145, 140},
                                       {94, 201, 98},
                                       {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    int i = std::min(3, static_cast<int>(t));
    double f = t - i;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])),
                  static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])),
                  static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
    return buf;
}

struct Frame {
    double x0 = 70, y0 = 40, w = 520, h = 360;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool log_x = false;

    double px(double x) const {
        double u = log_x ? (std::log(x) - std::log(xmin)) / (std::log(xmax) - std::log(xmin))
                         : (x - xmin) / (xmax - xmin);
        return x0 + u * w;
    }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

inline void open_doc(std::ofstream& out, int width, int height, const std::string& note) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    if (!note.empty()) out << "<!-- " << note << " -->\n";
}

inline void axes(std::ofstream& out, const Frame& f, const std::string& xlabel,
                 const std::string& ylabel) {
    out << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w << "\" height=\""
        << f.h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = f.log_x ? f.xmin * std::pow(f.xmax / f.xmin, i / 4.0)
                            : f.xmin + (f.xmax - f.xmin) * i / 4.0;
        double yv = f.ymin + (f.ymax - f.ymin) * i / 4.0;
        out << "<text x=\"" << f.px(xv) << "\" y=\"" << f.y0 + f.h + 16
            << "\" text-anchor=\"middle\">" << format_double(xv) << "</text>\n";
        out << "<text x=\"" << f.x0 - 8 << "\" y=\"" << f.py(yv) + 4
            << "\" text-anchor=\"end\">" << format_double(yv) << "</text>\n";
    }
    out << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << f.y0 + f.h + 34
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << f.y0 + f.h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << f.y0 + f.h / 2 << ")\">" << ylabel << "</text>\n";
}

/// values[i][j] on (xs[i], ys[j]); optional dashed vertical marker at x_mark.
inline void heatmap(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::vector<std::vector<double>>& values,
                    const std::string& xlabel, const std::string& ylabel, double x_mark,
                    const std::string& note) {
    if (xs.size() < 2 || ys.size() < 2 || values.size() != xs.size())
        throw std::invalid_argument("heatmap: need at least a 2x2 grid");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    Frame f;
    f.log_x = xs.front() > 0 && xs.back() / xs.front() > 20.0;
    f.xmin = xs.front();
    f.xmax = xs.back();
    f.ymin = ys.front();
    f.ymax = ys.back();
    open_doc(out, 700, 460, note);

    double vmax = 0.0;
    for (const auto& col : values)
        for (double v : col) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    auto edge = [&](const std::vector<double>& g, std::size_t i) {
        if (i == 0) return g.front();
        if (i == g.size()) return g.back();
        return 0.5 * (g[i - 1] + g[i]);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double xl = f.px(edge(xs, i)), xr = f.px(edge(xs, i + 1));
        for (std::size_t j = 0; j < ys.size(); ++j) {
            double yt = f.py(edge(ys, j + 1)), yb = f.py(edge(ys, j));
            out << "<rect x=\"" << xl << "\" y=\"" << yt << "\" width=\"" << xr - xl
                << "\" height=\"" << yb - yt << "\" fill=\"" << color_viridis(values[i][j] / vmax)
                << "\"/>\n";
        }
    }
    if (x_mark > 0.0) {
        out << "<line x1=\"" << f.px(x_mark) << "\" y1=\"" << f.y0 << "\" x2=\"" << f.px(x_mark)
            << "\" y2=\"" << f.y0 + f.h
            << "\" stroke=\"white\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
    }
    axes(out, f, xlabel, ylabel);
    // colorbar
    for (int k = 0; k < 40; ++k) {
        double t0 = k / 40.0;
        out << "<rect x=\"620\" y=\"" << f.y0 + f.h * (1.0 - (k + 1) / 40.0) << "\" width=\"18\" height=\""
            << f.h / 40.0 + 0.5 << "\" fill=\"" << color_viridis(t0) << "\"/>\n";
    }
    out << "<text x=\"644\" y=\"" << f.y0 + 10 << "\">" << format_double(vmax) << "</text>\n";
    out << "<text x=\"644\" y=\"" << f.y0 + f.h << "\">0</text>\n";
    out << "</svg>\n";
}

struct Series {
    std::string label;
    std::vector<double> x, y;
};

inline void line_plot(const std::string& path, const std::vector<Series>& series,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::string& note) {
    if (series.empty()) throw std::invalid_argument("line_plot: no series");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    Frame f;
    f.xmin = 1e300;
    f.xmax = -1e300;
    f.ymin = 0.0;
    f.ymax = 0.0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            f.xmin = std::min(f.xmin, s.x[i]);
            f.xmax = std::max(f.xmax, s.x[i]);
            f.ymax = std::max(f.ymax, s.y[i]);
        }
    if (f.xmax <= f.xmin || f.ymax <= f.ymin)
        throw std::invalid_argument("line_plot: degenerate range");
    f.ymax *= 1.05;
    open_doc(out, 700, 460, note);
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[s % 5] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i)
            out << f.px(series[s].x[i]) << "," << f.py(series[s].y[i]) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << f.x0 + f.w - 150 << "\" y=\"" << f.y0 + 16 + 16 * s << "\" fill=\""
            << palette[s % 5] << "\">" << series[s].label << "</text>\n";
    }
    axes(out, f, xlabel, ylabel);
    out << "</svg>\n";
}

} // namespace svg
} // namespace raman
