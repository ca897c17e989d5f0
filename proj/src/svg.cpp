#include "sprayopt/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sprayopt {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& title) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg_scatter: need equal-length non-empty series");

    constexpr double kW = 640, kH = 480, kMargin = 60;
    double x_min = *std::min_element(xs.begin(), xs.end());
    double x_max = *std::max_element(xs.begin(), xs.end());
    double y_min = *std::min_element(ys.begin(), ys.end());
    double y_max = *std::max_element(ys.begin(), ys.end());
    if (x_max == x_min) { x_min -= 1.0; x_max += 1.0; }
    if (y_max == y_min) { y_min -= 1.0; y_max += 1.0; }
    const double x_pad = 0.05 * (x_max - x_min);
    const double y_pad = 0.05 * (y_max - y_min);
    x_min -= x_pad; x_max += x_pad;
    y_min -= y_pad; y_max += y_pad;

    auto px = [&](double x) { return kMargin + (x - x_min) / (x_max - x_min) * (kW - 2 * kMargin); };
    auto py = [&](double y) { return kH - kMargin - (y - y_min) / (y_max - y_min) * (kH - 2 * kMargin); };

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
        << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kH / 2 << ")\">" << y_label << "</text>\n";
    // axis extents
    svg << "<text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(x_min + x_pad) << "</text>\n";
    svg << "<text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(x_max - x_pad) << "</text>\n";
    svg << "<text x=\"" << kMargin - 8 << "\" y=\"" << kH - kMargin
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(y_min + y_pad) << "</text>\n";
    svg << "<text x=\"" << kMargin - 8 << "\" y=\"" << kMargin + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(y_max - y_pad) << "</text>\n";
    // front polyline
    svg << "<polyline fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1\" points=\"";
    for (std::size_t i : order) svg << num(px(xs[i])) << ',' << num(py(ys[i])) << ' ';
    svg << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\"" << num(py(ys[i]))
            << "\" r=\"3\" fill=\"#264653\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sprayopt
