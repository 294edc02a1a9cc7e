#pragma once

#include <string>
#include <vector>

namespace costpath {

// Minimal SVG line charts for the path outputs. Cosmetic output only; the
// numbers live in the CSV tables.
struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#444444";
    bool dashed = false;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<LineSeries> series;
    double y_min = 0.0;
    double y_max = 1.0;
    bool fixed_y_range = false;  // otherwise padded to the data range
};

void write_line_chart_svg(const std::string& path, const ChartSpec& spec);

// Darker shades for costlier predictors, interpolated from pale to deep red.
std::string cost_tier_color(double cost, double min_cost, double max_cost);

}  // namespace costpath
