#ifndef SPRAYOPT_SVG_HPP
#define SPRAYOPT_SVG_HPP

#include <string>
#include <vector>

namespace sprayopt {

/// Minimal scatter plot: axes with min/max labels, one circle per point,
/// a polyline through the points sorted by x (the front trace).
std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& title);

}  // namespace sprayopt

#endif  // SPRAYOPT_SVG_HPP
