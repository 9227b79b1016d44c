#include "elastinet/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace elastinet {

std::string render_svg(const Network& network, const std::string& title) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& c : network.curves) {
        for (const auto& p : c.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    if (!(xmax >= xmin)) xmin = xmax = ymin = ymax = 0.0;
    double w = xmax - xmin, h = ymax - ymin;
    const double size = std::max({w, h, 1e-9});
    const double margin = 0.05 * size;
    w += 2.0 * margin;
    h += 2.0 * margin;

    std::ostringstream os;
    os.precision(10);
    // y grows downwards in SVG, so points are drawn with flipped y.
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin - margin << ' '
       << -(ymax + margin) << ' ' << w << ' ' << h << "\" width=\"600\" height=\""
       << std::max(1.0, std::round(600.0 * h / w)) << "\">\n";
    if (!title.empty()) os << "  <title>" << title << "</title>\n";
    const double stroke = 0.004 * size;
    for (std::size_t i = 0; i < network.curves.size(); ++i) {
        const auto& c = network.curves[i];
        os << "  <path fill=\"none\" stroke=\"" << colors[i % 6] << "\" stroke-width=\"" << stroke
           << "\" d=\"";
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            os << (k == 0 ? "M" : " L") << c.points[k].x << ' ' << -c.points[k].y;
        }
        if (c.closed) os << " Z";
        os << "\"/>\n";
    }
    for (const auto& j : network.junctions) {
        os << "  <circle cx=\"" << j.position.x << "\" cy=\"" << -j.position.y << "\" r=\""
           << 3.0 * stroke << "\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace elastinet
