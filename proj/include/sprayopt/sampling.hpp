#ifndef SPRAYOPT_SAMPLING_HPP
#define SPRAYOPT_SAMPLING_HPP

#include <vector>

#include "sprayopt/linalg.hpp"
#include "sprayopt/rng.hpp"

namespace sprayopt {

/// Latin hypercube sample of m points in the box [lower, upper]: one point
/// per stratum and axis, strata permuted independently per axis.
std::vector<Vec5> latin_hypercube(std::size_t m, const Vec5& lower, const Vec5& upper, Rng& rng);

}  // namespace sprayopt

#endif  // SPRAYOPT_SAMPLING_HPP
