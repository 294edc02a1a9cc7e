#include "costpath/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace costpath {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 190, kTop = 40, kBottom = 55;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string cost_tier_color(double cost, double min_cost, double max_cost) {
    double t = max_cost > min_cost ? (cost - min_cost) / (max_cost - min_cost) : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const auto mix = [t](int lo, int hi) {
        return static_cast<int>(std::lround(lo + t * (hi - lo)));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", mix(0xF2, 0x7F), mix(0xB8, 0x00),
                  mix(0xA8, 0x00));
    return buf;
}

void write_line_chart_svg(const std::string& path, const ChartSpec& spec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = spec.y_min, y_max = spec.y_max;
    if (!spec.fixed_y_range) {
        y_min = std::numeric_limits<double>::infinity();
        y_max = -y_min;
    }
    for (const auto& s : spec.series) {
        for (const double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        if (!spec.fixed_y_range)
            for (const double v : s.y) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!spec.fixed_y_range) {
        const double pad = 0.05 * std::max(y_max - y_min, 1e-12);
        y_min -= pad;
        y_max += pad;
    }
    if (!(y_max > y_min)) y_max = y_min + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto sy = [&](double y) {
        return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15' "
        << "font-family='sans-serif'>" << spec.title << "</text>\n";

    // axes with 5 ticks each
    out << "<g stroke='#222' stroke-width='1'>"
        << "<line x1='" << kLeft << "' y1='" << kTop + plot_h << "' x2='" << kLeft + plot_w
        << "' y2='" << kTop + plot_h << "'/>"
        << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft << "' y2='"
        << kTop + plot_h << "'/></g>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = x_min + (x_max - x_min) * t / 5.0;
        const double fy = y_min + (y_max - y_min) * t / 5.0;
        out << "<text x='" << sx(fx) << "' y='" << kTop + plot_h + 18
            << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(fx)
            << "</text>\n"
            << "<text x='" << kLeft - 8 << "' y='" << sy(fy) + 4
            << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(fy)
            << "</text>\n"
            << "<line x1='" << kLeft << "' y1='" << sy(fy) << "' x2='" << kLeft + plot_w
            << "' y2='" << sy(fy) << "' stroke='#dddddd' stroke-width='0.5'/>\n";
    }
    out << "<text x='" << kLeft + plot_w / 2 << "' y='" << kHeight - 14
        << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << spec.x_label
        << "</text>\n"
        << "<text x='18' y='" << kTop + plot_h / 2
        << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 18 "
        << kTop + plot_h / 2 << ")'>" << spec.y_label << "</text>\n";

    double legend_y = kTop + 6;
    for (const auto& s : spec.series) {
        if (s.x.empty()) continue;
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.8'";
        if (s.dashed) out << " stroke-dasharray='6 4'";
        out << " points='";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
        out << "'/>\n";
        out << "<line x1='" << kLeft + plot_w + 12 << "' y1='" << legend_y << "' x2='"
            << kLeft + plot_w + 34 << "' y2='" << legend_y << "' stroke='" << s.color
            << "' stroke-width='2'" << (s.dashed ? " stroke-dasharray='6 4'" : "") << "/>\n"
            << "<text x='" << kLeft + plot_w + 40 << "' y='" << legend_y + 4
            << "' font-size='11' font-family='sans-serif'>" << s.label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace costpath
