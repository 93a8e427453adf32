#include "aga/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aga {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

// Blue -> white -> orange, quantized into bands for a filled-contour look.
std::string band_color(double t, int bands) {
    t = std::clamp(t, 0.0, 1.0);
    t = std::floor(t * bands) / bands;
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(49 + u * (247 - 49));
        g = static_cast<int>(91 + u * (247 - 91));
        b = static_cast<int>(161 + u * (247 - 161));
    } else {
        const double u = (t - 0.5) / 0.5;
        r = static_cast<int>(247 + u * (217 - 247));
        g = static_cast<int>(247 + u * (95 - 247));
        b = static_cast<int>(247 + u * (14 - 247));
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_contour_svg(const ContourGrid& grid,
                               const std::vector<SvgSeries>& series,
                               std::size_t mark_every, const std::string& title) {
    const std::size_t res = grid.resolution;
    if (res < 2) throw std::invalid_argument("svg: grid resolution must be >= 2");
    if (!(grid.xmax > grid.xmin) || !(grid.ymax > grid.ymin))
        throw std::invalid_argument("svg: grid bounds have zero area");
    if (grid.values.size() != res * res)
        throw std::invalid_argument("svg: value grid has wrong size");

    const double margin = 50.0, plot = 540.0;
    const double width = plot + 2 * margin, height = plot + 2 * margin + 30.0;

    auto px = [&](double x) {
        return margin + (x - grid.xmin) / (grid.xmax - grid.xmin) * plot;
    };
    auto py = [&](double y) {
        return margin + plot - (y - grid.ymin) / (grid.ymax - grid.ymin) * plot;
    };

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (double v : grid.values) {
        if (!std::isfinite(v)) continue;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmax > vmin)) vmax = vmin + 1.0;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
        << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " "
        << fmt(height) << "\">\n";
    svg << "<title>" << xml_escape(title) << "</title>\n";
    svg << "<rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" fill=\"white\"/>\n";

    const double cw = plot / res, ch = plot / res;
    for (std::size_t j = 0; j < res; ++j) {
        for (std::size_t i = 0; i < res; ++i) {
            const double v = grid.values[j * res + i];
            const double t = std::isfinite(v) ? (v - vmin) / (vmax - vmin) : 0.0;
            const double x = margin + i * cw;
            const double y = margin + plot - (j + 1) * ch;
            svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
                << fmt(cw + 0.5) << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\""
                << band_color(t, 12) << "\"/>\n";
        }
    }

    svg << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\""
        << fmt(plot) << "\" height=\"" << fmt(plot)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (const auto& s : series) {
        if (s.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& p : s.points) svg << fmt(px(p[0])) << "," << fmt(py(p[1])) << " ";
        svg << "\"/>\n";
        if (mark_every > 0) {
            for (std::size_t k = 0; k < s.points.size(); k += mark_every) {
                svg << "<circle cx=\"" << fmt(px(s.points[k][0])) << "\" cy=\""
                    << fmt(py(s.points[k][1])) << "\" r=\"3\" fill=\"" << s.color
                    << "\"/>\n";
            }
        }
    }

    // Legend and axis annotations.
    double ly = margin + 14.0;
    for (const auto& s : series) {
        svg << "<rect x=\"" << fmt(margin + 8) << "\" y=\"" << fmt(ly - 9)
            << "\" width=\"18\" height=\"4\" fill=\"" << s.color << "\"/>\n";
        svg << "<text x=\"" << fmt(margin + 32) << "\" y=\"" << fmt(ly)
            << "\" font-size=\"13\" font-family=\"sans-serif\">" << xml_escape(s.label)
            << "</text>\n";
        ly += 18.0;
    }
    svg << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(height - 12)
        << "\" font-size=\"13\" font-family=\"sans-serif\">" << xml_escape(title)
        << " [" << fmt(grid.xmin) << "," << fmt(grid.xmax) << "] x [" << fmt(grid.ymin)
        << "," << fmt(grid.ymax) << "]</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace aga
