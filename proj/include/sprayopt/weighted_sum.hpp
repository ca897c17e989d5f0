#ifndef SPRAYOPT_WEIGHTED_SUM_HPP
#define SPRAYOPT_WEIGHTED_SUM_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sprayopt/linalg.hpp"
#include "sprayopt/model.hpp"
#include "sprayopt/pareto.hpp"

namespace sprayopt {

struct ProblemSpec;

/// Nonnegative weights summing to one (within 1e-12).
struct WeightVector {
    std::vector<double> w;

    explicit WeightVector(std::vector<double> weights);
    std::size_t size() const { return w.size(); }
};

/// All weight vectors of a simplex lattice with the given step. k = 2
/// enumerates (w1, 1-w1); k = 3 enumerates (w1, w2, 1-w1-w2) with
/// w1 + w2 <= 1. The step must divide 1 exactly in the grid resolution.
std::vector<WeightVector> weight_lattice(int k, double step);

/// One objective bound into the canonical minimization form.
struct BoundObjective {
    const GammaLogLinearModel* model;
    Direction direction;
};

/// Weighted sum of canonical objectives at a coded point; analytic gradient.
struct ScalarizedValue {
    double value;
    Vec5 gradient;
};
ScalarizedValue scalarize(const std::vector<BoundObjective>& objectives,
                          const WeightVector& weights, const Vec5& coded);

/// Objective callback for the SQP driver: returns the value at x and, when
/// grad is non-null, fills the analytic gradient.
using ScalarObjective = std::function<double(const Vec5& x, Vec5* grad)>;

ScalarObjective make_scalar_objective(std::vector<BoundObjective> objectives,
                                      WeightVector weights);

struct SqpConfig {
    double xtol = 1e-8;       // relative decision-variable step tolerance
    int max_iterations = 200;
    int multistart = 32;      // Latin-hypercube starts per weight
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
};

struct SqpResult {
    Vec5 x = zero_vec5();
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> value_trace;   // accepted objective values, initial included
    std::vector<Vec5> iterate_trace;   // iterates, start included
};

/// Damped BFGS update. Keeps the result symmetric positive definite: when
/// s'y <= 1e-8 |s||y| the Powell correction replaces y before the update.
Mat5 bfgs_update(const Mat5& h, const Vec5& s, const Vec5& y);

/// Minimizes g'd + d'Hd/2 subject to lower <= d <= upper with a primal
/// active-set method. Requires H symmetric positive definite and
/// lower <= 0 <= upper.
Vec5 solve_box_qp(const Mat5& h, const Vec5& g, const Vec5& lower, const Vec5& upper);

/// SQP with BFGS curvature under box constraints. Iterates stay inside the
/// box; stops when max_i |dx_i| / max(|x_i|, 1) < xtol or at the iteration
/// cap (flagged, best iterate returned).
SqpResult sqp_minimize(const ScalarObjective& objective, const Vec5& lower, const Vec5& upper,
                       const SqpConfig& config, const Vec5& start);

/// Best-of-multistart wrapper; starts are a Latin hypercube over the box
/// derived from the seed. Ties resolve to the lowest start index.
SqpResult sqp_minimize_multistart(const ScalarObjective& objective, const Vec5& lower,
                                  const Vec5& upper, const SqpConfig& config, std::uint64_t seed);

struct SweepRecord {
    std::size_t weight_index = 0;
    std::vector<double> weights;
    bool converged = false;
    int iterations = 0;
    double value = 0.0;
    bool retained = false;  // survived dedup + dominance filtering
};

struct SweepSummary {
    std::vector<SweepRecord> records;
    std::size_t skipped_weights = 0;
};

/// A posteriori weighted-sum sweep: best-of-multistart per weight vector,
/// deduplicated within coded tolerance 1e-4, dominated solutions dropped.
/// Deterministic for a fixed (seed, config, lattice).
SolutionSet weighted_sum_sweep(const ProblemSpec& problem,
                               const std::vector<WeightVector>& lattice, const SqpConfig& config,
                               std::uint64_t seed, SweepSummary* summary = nullptr);

}  // namespace sprayopt

#endif  // SPRAYOPT_WEIGHTED_SUM_HPP
