#pragma once

// Minimal static line plots: axes, optional log scales, one polyline per series.

#include <string>
#include <vector>

namespace qmb::runner {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

std::string render_svg(const Plot& plot);

}  // namespace qmb::runner
