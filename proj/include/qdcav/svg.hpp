#pragma once

#include <string>
#include <vector>

namespace qdcav {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    double y_offset_step = 0.0;  // vertical offset between successive series
    std::vector<PlotSeries> series;
};

// Standalone SVG document with axes, ticks and a legend.
std::string render_svg(const PlotSpec& plot);

}  // namespace qdcav
