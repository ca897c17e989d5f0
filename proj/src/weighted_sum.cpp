#include "sprayopt/weighted_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sprayopt/problems.hpp"
#include "sprayopt/sampling.hpp"

namespace sprayopt {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kDedupCodedTol = 1e-4;

enum BoundState : int { kAtLower = -1, kFree = 0, kAtUpper = 1 };

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w(std::move(weights)) {
    if (w.empty()) throw std::invalid_argument("weight vector must be non-empty");
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw std::invalid_argument("weights must sum to 1");
}

std::vector<WeightVector> weight_lattice(int k, double step) {
    if (k != 2 && k != 3)
        throw std::invalid_argument("weight_lattice supports k in {2, 3}");
    if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("step must lie in (0, 1]");
    const auto n = static_cast<long>(std::llround(1.0 / step));
    if (n < 1 || std::abs(n * step - 1.0) > 1e-9)
        throw std::invalid_argument("step must divide 1 exactly");

    std::vector<WeightVector> lattice;
    const double dn = static_cast<double>(n);
    if (k == 2) {
        lattice.reserve(static_cast<std::size_t>(n) + 1);
        for (long i = 0; i <= n; ++i)
            lattice.push_back(WeightVector{{static_cast<double>(i) / dn,
                                            static_cast<double>(n - i) / dn}});
    } else {
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n - i; ++j)
                lattice.push_back(WeightVector{{static_cast<double>(i) / dn,
                                                static_cast<double>(j) / dn,
                                                static_cast<double>(n - i - j) / dn}});
    }
    return lattice;
}

ScalarizedValue scalarize(const std::vector<BoundObjective>& objectives,
                          const WeightVector& weights, const Vec5& coded) {
    if (objectives.size() != weights.size())
        throw std::invalid_argument("scalarize: weight/objective count mismatch");
    ScalarizedValue out{0.0, zero_vec5()};
    for (std::size_t l = 0; l < objectives.size(); ++l) {
        const double sign = objectives[l].direction == Direction::maximize ? -1.0 : 1.0;
        const double wl = weights.w[l] * sign;
        out.value += wl * objectives[l].model->predict(coded);
        const Vec5 g = objectives[l].model->gradient(coded);
        for (std::size_t i = 0; i < kNumParams; ++i) out.gradient[i] += wl * g[i];
    }
    return out;
}

ScalarObjective make_scalar_objective(std::vector<BoundObjective> objectives,
                                      WeightVector weights) {
    return [objectives = std::move(objectives), weights = std::move(weights)](
               const Vec5& x, Vec5* grad) -> double {
        const ScalarizedValue sv = scalarize(objectives, weights, x);
        if (grad) *grad = sv.gradient;
        return sv.value;
    };
}

Mat5 bfgs_update(const Mat5& h, const Vec5& s, const Vec5& y) {
    const double s_norm = norm2(s);
    if (s_norm == 0.0) throw std::invalid_argument("bfgs_update: zero step");

    const Vec5 hs = mat_vec(h, s);
    const double shs = dot(s, hs);
    if (!(shs > 0.0)) throw std::invalid_argument("bfgs_update: H is not positive definite");

    Vec5 yy = y;
    double sy = dot(s, y);
    if (sy <= 1e-8 * s_norm * norm2(y)) {
        // Powell correction: pull y toward Hs until s'y = 0.2 s'Hs.
        const double theta = 0.8 * shs / (shs - sy);
        for (std::size_t i = 0; i < kNumParams; ++i)
            yy[i] = theta * y[i] + (1.0 - theta) * hs[i];
        sy = dot(s, yy);
    }

    Mat5 next;
    for (std::size_t i = 0; i < kNumParams; ++i) {
        for (std::size_t j = i; j < kNumParams; ++j) {
            const double v =
                h[i][j] - hs[i] * hs[j] / shs + yy[i] * yy[j] / sy;
            next[i][j] = v;
            next[j][i] = v;
        }
    }

    // Long runs of damped updates can push the smallest eigenvalue under
    // the round-off floor; shift it back so the matrix stays usable by the
    // QP. No-op for healthy curvature pairs.
    double scale = 0.0;
    for (std::size_t i = 0; i < kNumParams; ++i) scale = std::max(scale, next[i][i]);
    const double floor = 1e-8 * std::max(scale, 1e-8);
    const double lambda_min = min_eigenvalue(next);
    if (lambda_min < floor) {
        const double shift = floor - lambda_min;
        for (std::size_t i = 0; i < kNumParams; ++i) next[i][i] += shift;
    }
    return next;
}

Vec5 solve_box_qp(const Mat5& h, const Vec5& g, const Vec5& lower, const Vec5& upper) {
    for (std::size_t i = 0; i < kNumParams; ++i)
        if (!(lower[i] <= 0.0 && 0.0 <= upper[i]))
            throw std::invalid_argument("solve_box_qp: zero step must be feasible");
    {
        double packed[kNumParams * kNumParams];
        for (std::size_t i = 0; i < kNumParams; ++i)
            for (std::size_t j = 0; j < kNumParams; ++j) packed[i * kNumParams + j] = h[i][j];
        if (!cholesky_factor(packed, kNumParams))
            throw std::invalid_argument("solve_box_qp: H is not positive definite");
    }

    Vec5 d = zero_vec5();
    std::array<int, kNumParams> state{};
    state.fill(kFree);

    constexpr int kMaxPivots = 64;
    for (int pivot = 0; pivot < kMaxPivots; ++pivot) {
        // Equality-constrained solve on the free coordinates.
        std::array<std::size_t, kNumParams> free_idx{};
        std::size_t m = 0;
        for (std::size_t i = 0; i < kNumParams; ++i)
            if (state[i] == kFree) free_idx[m++] = i;

        Vec5 target = d;
        if (m > 0) {
            double a[kNumParams * kNumParams];
            double b[kNumParams];
            double x[kNumParams];
            for (std::size_t r = 0; r < m; ++r) {
                const std::size_t i = free_idx[r];
                double rhs = -g[i];
                for (std::size_t c = 0; c < m; ++c) a[r * m + c] = h[i][free_idx[c]];
                for (std::size_t j = 0; j < kNumParams; ++j)
                    if (state[j] != kFree) rhs -= h[i][j] * d[j];
                b[r] = rhs;
            }
            if (!cholesky_factor(a, m))
                throw std::runtime_error("solve_box_qp: free-subspace block not positive definite");
            cholesky_solve(a, m, b, x);
            for (std::size_t r = 0; r < m; ++r) target[free_idx[r]] = x[r];
        }

        // Step toward the subspace minimizer, stopping at the first bound.
        double alpha = 1.0;
        std::size_t blocking = kNumParams;
        int blocking_side = kFree;
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t i = free_idx[r];
            const double delta = target[i] - d[i];
            if (delta > 0.0 && target[i] > upper[i]) {
                const double a_i = (upper[i] - d[i]) / delta;
                if (a_i < alpha) { alpha = a_i; blocking = i; blocking_side = kAtUpper; }
            } else if (delta < 0.0 && target[i] < lower[i]) {
                const double a_i = (lower[i] - d[i]) / delta;
                if (a_i < alpha) { alpha = a_i; blocking = i; blocking_side = kAtLower; }
            }
        }

        if (blocking != kNumParams) {
            for (std::size_t r = 0; r < m; ++r) {
                const std::size_t i = free_idx[r];
                d[i] += alpha * (target[i] - d[i]);
            }
            state[blocking] = blocking_side;
            d[blocking] = blocking_side == kAtUpper ? upper[blocking] : lower[blocking];
            continue;
        }

        d = target;

        // Multiplier signs decide optimality of the active bounds.
        const Vec5 residual_g = [&] {
            Vec5 r = mat_vec(h, d);
            for (std::size_t i = 0; i < kNumParams; ++i) r[i] += g[i];
            return r;
        }();
        double worst = -1e-12;
        std::size_t release = kNumParams;
        for (std::size_t i = 0; i < kNumParams; ++i) {
            if (state[i] == kAtLower && residual_g[i] < worst) {
                worst = residual_g[i];
                release = i;
            } else if (state[i] == kAtUpper && -residual_g[i] < worst) {
                worst = -residual_g[i];
                release = i;
            }
        }
        if (release == kNumParams) return d;
        state[release] = kFree;
    }
    throw std::runtime_error("solve_box_qp: active-set iteration did not terminate");
}

SqpResult sqp_minimize(const ScalarObjective& objective, const Vec5& lower, const Vec5& upper,
                       const SqpConfig& config, const Vec5& start) {
    if (!(config.xtol > 0.0) || config.max_iterations < 1)
        throw std::invalid_argument("sqp_minimize: invalid configuration");

    SqpResult res;
    Vec5 x = start;
    for (std::size_t i = 0; i < kNumParams; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);

    Vec5 grad = zero_vec5();
    double fx = objective(x, &grad);
    Mat5 h = identity_mat5();

    res.iterate_trace.push_back(x);
    res.value_trace.push_back(fx);

    for (int it = 0; it < config.max_iterations; ++it) {
        Vec5 qp_lo, qp_hi;
        for (std::size_t i = 0; i < kNumParams; ++i) {
            qp_lo[i] = lower[i] - x[i];
            qp_hi[i] = upper[i] - x[i];
        }
        const Vec5 d = solve_box_qp(h, grad, qp_lo, qp_hi);
        res.iterations = it + 1;

        if (norm_inf(d) < 1e-15) {
            res.converged = true;
            break;
        }

        // Armijo backtracking on the raw objective; iterates stay feasible,
        // so no merit penalty is needed.
        const double slope = dot(grad, d);
        double alpha = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        Vec5 x_new = x;
        while (alpha > 1e-14) {
            for (std::size_t i = 0; i < kNumParams; ++i)
                x_new[i] = std::clamp(x[i] + alpha * d[i], lower[i], upper[i]);
            try {
                f_new = objective(x_new, nullptr);
            } catch (const PredictionOverflow&) {
                f_new = std::numeric_limits<double>::infinity();
            }
            if (f_new <= fx + config.armijo_c1 * alpha * slope) break;
            alpha *= config.backtrack;
        }
        if (!(f_new <= fx)) break;  // line search stalled; keep best iterate

        Vec5 grad_new = zero_vec5();
        objective(x_new, &grad_new);

        Vec5 s, y;
        double step_measure = 0.0;
        for (std::size_t i = 0; i < kNumParams; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = grad_new[i] - grad[i];
            step_measure = std::max(step_measure, std::abs(s[i]) / std::max(std::abs(x[i]), 1.0));
        }
        if (norm2(s) > 0.0) h = bfgs_update(h, s, y);

        x = x_new;
        fx = f_new;
        grad = grad_new;
        res.iterate_trace.push_back(x);
        res.value_trace.push_back(fx);

        if (step_measure < config.xtol) {
            res.converged = true;
            break;
        }
    }

    res.x = x;
    res.value = fx;
    return res;
}

SqpResult sqp_minimize_multistart(const ScalarObjective& objective, const Vec5& lower,
                                  const Vec5& upper, const SqpConfig& config,
                                  std::uint64_t seed) {
    if (config.multistart < 1)
        throw std::invalid_argument("sqp_minimize_multistart: multistart must be >= 1");
    Rng rng(seed);
    const auto starts =
        latin_hypercube(static_cast<std::size_t>(config.multistart), lower, upper, rng);

    SqpResult best;
    bool have_best = false;
    for (const auto& start : starts) {
        SqpResult r = sqp_minimize(objective, lower, upper, config, start);
        const bool better =
            !have_best || (r.converged && !best.converged) ||
            (r.converged == best.converged && r.value < best.value);
        if (better) {
            best = std::move(r);
            have_best = true;
        }
    }
    return best;
}

SolutionSet weighted_sum_sweep(const ProblemSpec& problem,
                               const std::vector<WeightVector>& lattice, const SqpConfig& config,
                               std::uint64_t seed, SweepSummary* summary) {
    if (lattice.empty()) throw std::invalid_argument("weighted_sum_sweep: empty lattice");
    problem.validate();

    std::vector<BoundObjective> objectives;
    for (const auto& spec : problem.objectives)
        objectives.push_back({&problem.registry().at(spec.model), spec.direction});

    const Vec5 lo = problem.space.coded_lower();
    const Vec5 hi = problem.space.coded_upper();

    SweepSummary local;
    SweepSummary& sum = summary ? *summary : local;
    sum.records.clear();
    sum.skipped_weights = 0;

    struct Hit {
        std::size_t weight_index;
        Vec5 coded;
        double value;
    };
    std::vector<Hit> hits;

    for (std::size_t wi = 0; wi < lattice.size(); ++wi) {
        const auto& w = lattice[wi];
        if (w.size() != problem.k())
            throw std::invalid_argument("weighted_sum_sweep: lattice arity mismatch");
        const ScalarObjective f = make_scalar_objective(objectives, w);
        const SqpResult r =
            sqp_minimize_multistart(f, lo, hi, config, Rng::derive(seed, wi));

        SweepRecord rec;
        rec.weight_index = wi;
        rec.weights = w.w;
        rec.converged = r.converged;
        rec.iterations = r.iterations;
        rec.value = r.value;
        sum.records.push_back(rec);

        if (!r.converged) {
            ++sum.skipped_weights;
            continue;
        }
        hits.push_back({wi, r.x, r.value});
    }

    // Deduplicate within coded tolerance, first occurrence wins.
    std::vector<Hit> unique_hits;
    for (const auto& hit : hits) {
        bool duplicate = false;
        for (const auto& kept : unique_hits) {
            double dmax = 0.0;
            for (std::size_t i = 0; i < kNumParams; ++i)
                dmax = std::max(dmax, std::abs(hit.coded[i] - kept.coded[i]));
            if (dmax <= kDedupCodedTol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) unique_hits.push_back(hit);
    }

    SolutionSet set;
    set.labels = problem.labels();
    set.directions = problem.directions();
    set.provenance = {"weighted-sum", seed};
    for (const auto& hit : unique_hits) {
        Candidate c = evaluate(problem, problem.space.denormalize(hit.coded));
        set.candidates.push_back(std::move(c));
    }

    SolutionSet filtered = set.candidates.empty() ? set : pareto_filter(set);
    for (auto& rec : sum.records) {
        rec.retained = false;
        for (std::size_t u = 0; u < unique_hits.size(); ++u) {
            if (unique_hits[u].weight_index != rec.weight_index) continue;
            // Retained iff it survived the dominance filter too.
            for (const auto& c : filtered.candidates) {
                double dmax = 0.0;
                const Vec5 coded = problem.space.normalize(c.decision);
                for (std::size_t i = 0; i < kNumParams; ++i)
                    dmax = std::max(dmax, std::abs(coded[i] - unique_hits[u].coded[i]));
                if (dmax <= 1e-12) {
                    rec.retained = true;
                    break;
                }
            }
        }
    }
    if (!filtered.candidates.empty()) assign_rank_and_crowding(filtered);
    return filtered;
}

}  // namespace sprayopt
