#ifndef SPRAYOPT_PARAMS_HPP
#define SPRAYOPT_PARAMS_HPP

#include <array>
#include <string>

#include "sprayopt/linalg.hpp"

namespace sprayopt {

/// HVOF process inputs in physical units: powder feed rate (g/min),
/// stand-off distance (mm), fuel-to-oxygen ratio (-), coating velocity
/// (m/min), total gas flow (nl/m).
struct ParameterVector {
    double pfr = 0.0;
    double sod = 0.0;
    double lambda = 0.0;
    double cv = 0.0;
    double tgf = 0.0;

    Vec5 as_array() const { return {pfr, sod, lambda, cv, tgf}; }
    static ParameterVector from_array(const Vec5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

    bool finite() const { return all_finite(as_array()); }
};

inline const std::array<std::string, kNumParams>& parameter_names() {
    static const std::array<std::string, kNumParams> names = {"pfr", "sod", "lambda", "cv", "tgf"};
    return names;
}

/// One parameter axis: physical bounds plus the coding pair. The default
/// coding maps [lower, upper] onto [-1, +1]; center/half_range may be
/// overridden to use a different convention.
struct ParameterAxis {
    double lower;
    double upper;
    double center;
    double half_range;

    ParameterAxis(double lo, double hi)
        : lower(lo), upper(hi), center(0.5 * (lo + hi)), half_range(0.5 * (hi - lo)) {}
    ParameterAxis(double lo, double hi, double c, double h)
        : lower(lo), upper(hi), center(c), half_range(h) {}
};

class ParameterSpace {
  public:
    explicit ParameterSpace(const std::array<ParameterAxis, kNumParams>& axes);

    /// Material-specific box for WC-10Co-4Cr powder.
    static const ParameterSpace& wc_10co_4cr();

    const ParameterAxis& axis(std::size_t i) const { return axes_[i]; }

    /// coded_i = (x_i - center_i) / half_range_i. Rejects non-finite inputs.
    Vec5 normalize(const ParameterVector& x) const;

    /// Exact inverse of normalize().
    ParameterVector denormalize(const Vec5& coded) const;

    bool contains(const ParameterVector& x, double tol = 0.0) const;

    /// Physical bounds expressed in coded units (the optimization box).
    Vec5 coded_lower() const;
    Vec5 coded_upper() const;

  private:
    std::array<ParameterAxis, kNumParams> axes_;
};

}  // namespace sprayopt

#endif  // SPRAYOPT_PARAMS_HPP
