#include "sprayopt/desirability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "sprayopt/problems.hpp"
#include "sprayopt/rng.hpp"
#include "sprayopt/sampling.hpp"

namespace sprayopt {

namespace {

void check_transform_args(double lower, double upper, double shape) {
    if (!(lower < upper)) throw std::invalid_argument("desirability bounds require L < U");
    if (!(shape > 0.0)) throw std::invalid_argument("desirability shape requires r > 0");
}

// Ranking value for the direct search: strictly above 1 when D > 0, the
// normalized sum of per-objective desirabilities on the D = 0 plateau.
struct SearchValue {
    double key;        // maximized
    double overall;    // true D
    double surrogate;  // plateau tie-breaker, reported only
};

}  // namespace

double desirability_min(double f, double lower, double upper, double shape) {
    check_transform_args(lower, upper, shape);
    if (f >= upper) return 0.0;
    if (f <= lower) return 1.0;
    return std::pow((upper - f) / (upper - lower), shape);
}

double desirability_max(double f, double lower, double upper, double shape) {
    check_transform_args(lower, upper, shape);
    if (f <= lower) return 0.0;
    if (f >= upper) return 1.0;
    return std::pow((f - lower) / (upper - lower), shape);
}

double overall_desirability(const std::vector<double>& d, const std::vector<double>& w) {
    if (d.size() != w.size() || d.empty())
        throw std::invalid_argument("overall_desirability: length mismatch");
    double weight_sum = 0.0;
    for (double wj : w) {
        if (!(wj >= 0.0)) throw std::invalid_argument("overall_desirability: negative weight");
        weight_sum += wj;
    }
    if (!(weight_sum > 0.0))
        throw std::invalid_argument("overall_desirability: all weights zero");
    double log_acc = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (w[j] == 0.0) continue;
        if (d[j] <= 0.0) return 0.0;
        log_acc += w[j] * std::log(d[j]);
    }
    return std::exp(log_acc / weight_sum);
}

void DesirabilitySpec::validate() const {
    if (objectives.empty()) throw std::invalid_argument("desirability spec has no objectives");
    double weight_sum = 0.0;
    for (const auto& o : objectives) {
        check_transform_args(o.lower, o.upper, o.shape);
        if (!(o.weight >= 0.0))
            throw std::invalid_argument("desirability weights must be nonnegative");
        weight_sum += o.weight;
    }
    if (!(weight_sum > 0.0))
        throw std::invalid_argument("desirability spec needs a positive weight");
}

double DesirabilitySpec::apply(std::size_t j, double raw) const {
    const auto& o = objectives.at(j);
    return o.direction == Direction::minimize ? desirability_min(raw, o.lower, o.upper, o.shape)
                                              : desirability_max(raw, o.lower, o.upper, o.shape);
}

namespace {

SearchValue evaluate_point(const ProblemSpec& problem, const DesirabilitySpec& spec,
                           const std::vector<double>& weights, const Vec5& coded,
                           std::vector<double>* d_out, std::vector<double>* raw_out) {
    std::vector<double> raw;
    evaluate_canonical_coded(problem, coded, &raw);
    const std::size_t k = raw.size();
    std::vector<double> d(k);
    double d_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        d[j] = spec.apply(j, raw[j]);
        d_sum += d[j];
    }
    SearchValue v;
    v.overall = overall_desirability(d, weights);
    v.surrogate = d_sum / static_cast<double>(k);
    v.key = v.overall > 0.0 ? 1.0 + v.overall : v.surrogate;
    if (d_out) *d_out = std::move(d);
    if (raw_out) *raw_out = std::move(raw);
    return v;
}

// Nelder-Mead on -key with all trial points clamped into the box.
struct SimplexVertex {
    Vec5 x;
    double key;
};

Vec5 clamp_box(Vec5 x, const Vec5& lo, const Vec5& hi) {
    for (std::size_t i = 0; i < kNumParams; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

SimplexVertex nelder_mead_restart(const std::function<double(const Vec5&)>& key_fn,
                                  const Vec5& start, const Vec5& lo, const Vec5& hi,
                                  const DirectSearchConfig& cfg) {
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    const std::size_t n = kNumParams;

    std::vector<SimplexVertex> simplex;
    simplex.reserve(n + 1);
    int evals = 0;
    auto eval = [&](const Vec5& x) {
        ++evals;
        return key_fn(x);
    };

    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
        Vec5 v = start;
        const double step = 0.10 * (hi[i] - lo[i]);
        v[i] = v[i] + step <= hi[i] ? v[i] + step : v[i] - step;
        v = clamp_box(v, lo, hi);
        simplex.push_back({v, eval(v)});
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const SimplexVertex& a, const SimplexVertex& b) {
                             return a.key > b.key;  // best (largest key) first
                         });
    };
    order();

    while (evals < cfg.max_evaluations) {
        if (std::abs(simplex.front().key - simplex.back().key) <=
            cfg.tolerance * (std::abs(simplex.front().key) + cfg.tolerance))
            break;

        Vec5 centroid = zero_vec5();
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;

        auto along = [&](double t) {
            Vec5 p;
            for (std::size_t i = 0; i < n; ++i)
                p[i] = centroid[i] + t * (centroid[i] - simplex.back().x[i]);
            return clamp_box(p, lo, hi);
        };

        const Vec5 xr = along(kReflect);
        const double fr = eval(xr);
        if (fr > simplex.front().key) {
            const Vec5 xe = along(kExpand);
            const double fe = eval(xe);
            simplex.back() = fe > fr ? SimplexVertex{xe, fe} : SimplexVertex{xr, fr};
        } else if (fr > simplex[n - 1].key) {
            simplex.back() = {xr, fr};
        } else {
            const bool outside = fr > simplex.back().key;
            const Vec5 xc = along(outside ? kContract : -kContract);
            const double fc = eval(xc);
            if (fc > (outside ? fr : simplex.back().key)) {
                simplex.back() = {xc, fc};
            } else {
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v].x[i] =
                            simplex[0].x[i] + kShrink * (simplex[v].x[i] - simplex[0].x[i]);
                    simplex[v].x = clamp_box(simplex[v].x, lo, hi);
                    simplex[v].key = eval(simplex[v].x);
                }
            }
        }
        order();
    }
    return simplex.front();
}

}  // namespace

DesirabilityOutcome maximize_desirability(const ProblemSpec& problem,
                                          const DesirabilitySpec& spec,
                                          const DirectSearchConfig& config, std::uint64_t seed) {
    problem.validate();
    spec.validate();
    if (spec.objectives.size() != problem.k())
        throw std::invalid_argument("desirability spec arity does not match the problem");
    if (config.restarts < 1 || config.max_evaluations < 10 || !(config.tolerance > 0.0))
        throw std::invalid_argument("invalid direct-search configuration");

    // Weights normalized to sum 1; D is invariant, the exponents stay tame.
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (const auto& o : spec.objectives) weight_sum += o.weight;
    for (const auto& o : spec.objectives) weights.push_back(o.weight / weight_sum);

    const Vec5 lo = problem.space.coded_lower();
    const Vec5 hi = problem.space.coded_upper();
    const auto key_fn = [&](const Vec5& x) {
        return evaluate_point(problem, spec, weights, x, nullptr, nullptr).key;
    };

    SimplexVertex best{zero_vec5(), -1.0};
    for (int r = 0; r < config.restarts; ++r) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
        const Vec5 start = latin_hypercube(1, lo, hi, rng)[0];
        const SimplexVertex v = nelder_mead_restart(key_fn, start, lo, hi, config);
        if (v.key > best.key) best = v;
    }

    DesirabilityOutcome out;
    const SearchValue sv =
        evaluate_point(problem, spec, weights, best.x, &out.per_objective, &out.raw);
    out.decision = problem.space.denormalize(best.x);
    out.overall = sv.overall;
    out.plateau_surrogate = sv.surrogate;
    out.zero_everywhere = sv.overall == 0.0;
    return out;
}

}  // namespace sprayopt
