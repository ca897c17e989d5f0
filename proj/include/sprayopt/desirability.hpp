#ifndef SPRAYOPT_DESIRABILITY_HPP
#define SPRAYOPT_DESIRABILITY_HPP

#include <cstdint>
#include <vector>

#include "sprayopt/params.hpp"
#include "sprayopt/pareto.hpp"

namespace sprayopt {

struct ProblemSpec;

/// One-sided transform for a minimized objective: 1 at or below L, 0 at or
/// above U, ((U - f) / (U - L))^r between.
double desirability_min(double f, double lower, double upper, double shape);

/// One-sided transform for a maximized objective: 0 at or below L, 1 at or
/// above U, ((f - L) / (U - L))^r between.
double desirability_max(double f, double lower, double upper, double shape);

/// Weighted geometric mean D = (prod d_j^w_j)^(1 / sum w_j). Zero whenever
/// a positively weighted d_j is zero.
double overall_desirability(const std::vector<double>& d, const std::vector<double>& w);

/// Per-objective transform configuration: direction, bounds in objective
/// units, shape exponent, weight.
struct DesirabilityObjective {
    Direction direction = Direction::maximize;
    double lower = 0.0;
    double upper = 1.0;
    double shape = 1.0;
    double weight = 1.0;
};

struct DesirabilitySpec {
    std::vector<DesirabilityObjective> objectives;

    void validate() const;  // L < U, r > 0, at least one positive weight
    double apply(std::size_t j, double raw) const;
};

struct DirectSearchConfig {
    int restarts = 50;          // Latin-hypercube restarts
    double tolerance = 1e-8;    // simplex value-spread stop
    int max_evaluations = 5000; // per restart
};

struct DesirabilityOutcome {
    ParameterVector decision;
    double overall = 0.0;
    std::vector<double> per_objective;
    std::vector<double> raw;
    bool zero_everywhere = false;  // best D over all restarts was exactly 0
    double plateau_surrogate = 0.0;
};

/// Maximizes the overall desirability over the problem box with restarted
/// Nelder-Mead, iterates clamped to the box. Deterministic per seed; a
/// larger restart budget can only improve the result. On an all-zero
/// desirability landscape the best raw-objective compromise (by the summed
/// per-objective desirabilities) is returned and flagged.
DesirabilityOutcome maximize_desirability(const ProblemSpec& problem,
                                          const DesirabilitySpec& spec,
                                          const DirectSearchConfig& config, std::uint64_t seed);

}  // namespace sprayopt

#endif  // SPRAYOPT_DESIRABILITY_HPP
