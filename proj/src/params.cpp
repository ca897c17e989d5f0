#include "sprayopt/params.hpp"

#include <cmath>
#include <stdexcept>

namespace sprayopt {

ParameterSpace::ParameterSpace(const std::array<ParameterAxis, kNumParams>& axes) : axes_(axes) {
    for (std::size_t i = 0; i < kNumParams; ++i) {
        const auto& a = axes_[i];
        if (!std::isfinite(a.lower) || !std::isfinite(a.upper) || !std::isfinite(a.center) ||
            !std::isfinite(a.half_range))
            throw std::invalid_argument("parameter axis '" + parameter_names()[i] +
                                        "' has non-finite bounds");
        if (!(a.lower < a.upper))
            throw std::invalid_argument("parameter axis '" + parameter_names()[i] +
                                        "' requires lower < upper");
        if (!(a.half_range > 0.0))
            throw std::invalid_argument("parameter axis '" + parameter_names()[i] +
                                        "' requires half_range > 0");
    }
}

const ParameterSpace& ParameterSpace::wc_10co_4cr() {
    static const ParameterSpace space{{ParameterAxis{45.0, 75.0}, ParameterAxis{200.0, 260.0},
                                       ParameterAxis{0.84, 1.04}, ParameterAxis{75.0, 125.0},
                                       ParameterAxis{615.0, 751.0}}};
    return space;
}

Vec5 ParameterSpace::normalize(const ParameterVector& x) const {
    if (!x.finite()) throw std::invalid_argument("normalize: non-finite parameter vector");
    const Vec5 phys = x.as_array();
    Vec5 coded;
    for (std::size_t i = 0; i < kNumParams; ++i)
        coded[i] = (phys[i] - axes_[i].center) / axes_[i].half_range;
    return coded;
}

ParameterVector ParameterSpace::denormalize(const Vec5& coded) const {
    if (!all_finite(coded)) throw std::invalid_argument("denormalize: non-finite coded vector");
    Vec5 phys;
    for (std::size_t i = 0; i < kNumParams; ++i)
        phys[i] = axes_[i].center + coded[i] * axes_[i].half_range;
    return ParameterVector::from_array(phys);
}

bool ParameterSpace::contains(const ParameterVector& x, double tol) const {
    const Vec5 phys = x.as_array();
    for (std::size_t i = 0; i < kNumParams; ++i) {
        if (phys[i] < axes_[i].lower - tol || phys[i] > axes_[i].upper + tol) return false;
    }
    return true;
}

Vec5 ParameterSpace::coded_lower() const {
    Vec5 lo;
    for (std::size_t i = 0; i < kNumParams; ++i)
        lo[i] = (axes_[i].lower - axes_[i].center) / axes_[i].half_range;
    return lo;
}

Vec5 ParameterSpace::coded_upper() const {
    Vec5 hi;
    for (std::size_t i = 0; i < kNumParams; ++i)
        hi[i] = (axes_[i].upper - axes_[i].center) / axes_[i].half_range;
    return hi;
}

}  // namespace sprayopt
