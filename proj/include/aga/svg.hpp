#pragma once

// Self-contained SVG rendering: filled contour grid plus trajectory overlays.

#include <array>
#include <string>
#include <vector>

namespace aga {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::array<double, 2>> points;  // game coordinates
};

struct ContourGrid {
    double xmin, xmax, ymin, ymax;
    std::size_t resolution;       // cells per axis
    std::vector<double> values;   // resolution * resolution, row-major from ymin
};

std::string render_contour_svg(const ContourGrid& grid,
                               const std::vector<SvgSeries>& series,
                               std::size_t mark_every, const std::string& title);

}  // namespace aga
