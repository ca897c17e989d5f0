#include "sprayopt/sampling.hpp"

#include <numeric>

namespace sprayopt {

std::vector<Vec5> latin_hypercube(std::size_t m, const Vec5& lower, const Vec5& upper, Rng& rng) {
    std::vector<Vec5> points(m, zero_vec5());
    std::vector<std::size_t> strata(m);
    for (std::size_t dim = 0; dim < kNumParams; ++dim) {
        std::iota(strata.begin(), strata.end(), 0);
        for (std::size_t i = m; i-- > 1;) {
            const std::size_t j = rng.index(i + 1);
            std::swap(strata[i], strata[j]);
        }
        const double width = (upper[dim] - lower[dim]) / static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i)
            points[i][dim] =
                lower[dim] + width * (static_cast<double>(strata[i]) + rng.uniform());
    }
    return points;
}

}  // namespace sprayopt
