#include "sprayopt/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sprayopt/problems.hpp"

namespace sprayopt {

namespace {

constexpr double kWorstObjective = 1e300;

std::vector<std::vector<std::size_t>> sort_population(NsgaPopulation& pop) {
    std::vector<std::vector<double>> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.canonical);
    const auto fronts = non_dominated_sort_values(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<std::vector<double>> fo;
        fo.reserve(fronts[f].size());
        for (std::size_t i : fronts[f]) {
            pop[i].rank = static_cast<int>(f) + 1;
            fo.push_back(objs[i]);
        }
        const auto dist = crowding_distance_values(fo);
        for (std::size_t i = 0; i < fronts[f].size(); ++i) pop[fronts[f][i]].crowding = dist[i];
    }
    return fronts;
}

const NsgaIndividual& tournament(const NsgaIndividual& a, const NsgaIndividual& b, Rng& rng) {
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
    return rng.coin() ? a : b;
}

void evaluate_individual(const NsgaEvaluator& evaluate, std::size_t k, NsgaIndividual& ind) {
    try {
        evaluate(ind.coded, ind.canonical, ind.raw);
        ind.eval_failed = false;
        if (ind.canonical.size() != k || ind.raw.size() != k)
            throw std::logic_error("evaluator returned wrong arity");
    } catch (const std::exception&) {
        ind.canonical.assign(k, kWorstObjective);
        ind.raw.assign(k, std::numeric_limits<double>::quiet_NaN());
        ind.eval_failed = true;
    }
}

double front_hypervolume(const NsgaPopulation& pop, const std::vector<std::size_t>& front,
                         const std::optional<std::vector<double>>& reference) {
    if (!reference || reference->size() != 2)
        return std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> pts;
    pts.reserve(front.size());
    for (std::size_t i : front) {
        const auto& v = pop[i].canonical;
        if (v.size() != 2 || v[0] > (*reference)[0] || v[1] > (*reference)[1])
            return std::numeric_limits<double>::quiet_NaN();
        pts.push_back(v);
    }
    return hypervolume_2d(pts, *reference);
}

}  // namespace

void NsgaConfig::validate() const {
    if (population < 4 || population % 2 != 0)
        throw std::invalid_argument("nsga2: population must be even and >= 4");
    if (generations < 1) throw std::invalid_argument("nsga2: generations must be >= 1");
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob < 0.0 ||
        mutation_prob > 1.0)
        throw std::invalid_argument("nsga2: probabilities must lie in [0, 1]");
    if (!(eta_crossover > 0.0) || !(eta_mutation > 0.0))
        throw std::invalid_argument("nsga2: distribution indices must be positive");
}

NsgaPopulation nsga_initialize(const Vec5& lower, const Vec5& upper, int n, Rng& rng) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("nsga_initialize: population must be even and >= 4");
    NsgaPopulation pop(static_cast<std::size_t>(n));
    for (auto& ind : pop)
        for (std::size_t i = 0; i < kNumParams; ++i)
            ind.coded[i] = rng.uniform(lower[i], upper[i]);
    return pop;
}

const Candidate& crowded_tournament(const Candidate& a, const Candidate& b, Rng& rng) {
    if (!a.rank || !b.rank || !a.crowding || !b.crowding)
        throw std::invalid_argument("crowded_tournament: rank and crowding must be assigned");
    if (*a.rank != *b.rank) return *a.rank < *b.rank ? a : b;
    if (*a.crowding != *b.crowding) return *a.crowding > *b.crowding ? a : b;
    return rng.coin() ? a : b;
}

void sbx_crossover(const Vec5& parent1, const Vec5& parent2, Vec5& child1, Vec5& child2,
                   double eta, double crossover_prob, const Vec5& lower, const Vec5& upper,
                   Rng& rng) {
    child1 = parent1;
    child2 = parent2;
    if (rng.uniform() > crossover_prob) return;
    for (std::size_t i = 0; i < kNumParams; ++i) {
        if (rng.uniform() > 0.5) continue;  // per-variable exchange gate
        const double u = rng.uniform();
        const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        const double mean = 0.5 * (parent1[i] + parent2[i]);
        const double half_spread = 0.5 * beta * (parent2[i] - parent1[i]);
        child1[i] = std::clamp(mean - half_spread, lower[i], upper[i]);
        child2[i] = std::clamp(mean + half_spread, lower[i], upper[i]);
    }
}

Vec5 polynomial_mutation(const Vec5& x, double eta, double mutation_prob, const Vec5& lower,
                         const Vec5& upper, Rng& rng) {
    Vec5 out = x;
    for (std::size_t i = 0; i < kNumParams; ++i) {
        if (rng.uniform() >= mutation_prob) continue;
        const double u = rng.uniform();
        const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                     : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
        out[i] = std::clamp(out[i] + delta * (upper[i] - lower[i]), lower[i], upper[i]);
    }
    return out;
}

NsgaPopulation environmental_selection(NsgaPopulation merged, int n) {
    if (merged.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("environmental_selection: merged population too small");
    const auto fronts = sort_population(merged);

    NsgaPopulation next;
    next.reserve(static_cast<std::size_t>(n));
    for (const auto& front : fronts) {
        if (next.size() + front.size() <= static_cast<std::size_t>(n)) {
            for (std::size_t i : front) next.push_back(merged[i]);
            if (next.size() == static_cast<std::size_t>(n)) break;
            continue;
        }
        // Splitting front: descending crowding, stable on input index.
        std::vector<std::size_t> order = front;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return merged[a].crowding > merged[b].crowding;
        });
        for (std::size_t i : order) {
            if (next.size() == static_cast<std::size_t>(n)) break;
            next.push_back(merged[i]);
        }
        break;
    }
    return next;
}

NsgaRunResult nsga2_run_fn(const NsgaEvaluator& evaluate, std::size_t num_objectives,
                           const Vec5& lower, const Vec5& upper, const NsgaConfig& config,
                           const std::optional<std::vector<double>>& hv_reference) {
    config.validate();
    if (num_objectives < 1) throw std::invalid_argument("nsga2_run_fn: k must be >= 1");
    const auto n = static_cast<std::size_t>(config.population);

    Rng rng(config.seed);
    NsgaPopulation parents = nsga_initialize(lower, upper, config.population, rng);
    for (auto& ind : parents) evaluate_individual(evaluate, num_objectives, ind);
    auto parent_fronts = sort_population(parents);

    NsgaRunResult result;
    result.history.reserve(static_cast<std::size_t>(config.generations) + 1);
    result.history.push_back(
        {0, parent_fronts[0].size(), front_hypervolume(parents, parent_fronts[0], hv_reference)});

    for (int gen = 1; gen <= config.generations; ++gen) {
        NsgaPopulation offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            const auto& p1 = tournament(parents[rng.index(n)], parents[rng.index(n)], rng);
            const auto& p2 = tournament(parents[rng.index(n)], parents[rng.index(n)], rng);
            NsgaIndividual c1, c2;
            sbx_crossover(p1.coded, p2.coded, c1.coded, c2.coded, config.eta_crossover,
                          config.crossover_prob, lower, upper, rng);
            c1.coded = polynomial_mutation(c1.coded, config.eta_mutation, config.mutation_prob,
                                           lower, upper, rng);
            c2.coded = polynomial_mutation(c2.coded, config.eta_mutation, config.mutation_prob,
                                           lower, upper, rng);
            offspring.push_back(std::move(c1));
            offspring.push_back(std::move(c2));
        }
        for (auto& ind : offspring) evaluate_individual(evaluate, num_objectives, ind);

        NsgaPopulation merged = parents;
        merged.insert(merged.end(), offspring.begin(), offspring.end());
        parents = environmental_selection(std::move(merged), config.population);

        std::vector<std::size_t> front1;
        for (std::size_t i = 0; i < parents.size(); ++i)
            if (parents[i].rank == 1) front1.push_back(i);
        result.history.push_back(
            {gen, front1.size(), front_hypervolume(parents, front1, hv_reference)});
    }

    for (std::size_t i = 0; i < parents.size(); ++i)
        if (parents[i].rank == 1) result.front_indices.push_back(i);
    result.final_population = std::move(parents);
    return result;
}

SolutionSet nsga2_run(const ProblemSpec& problem, const NsgaConfig& config,
                      std::vector<GenerationRecord>* history) {
    problem.validate();
    const std::size_t k = problem.k();

    const NsgaEvaluator evaluate = [&problem](const Vec5& coded, std::vector<double>& canonical,
                                              std::vector<double>& raw) {
        canonical = evaluate_canonical_coded(problem, coded, &raw);
    };

    // Canonical values of the built-in problems with a maximized first pair
    // are negative throughout the box, so the origin is a usable fixed
    // hypervolume reference for k = 2.
    std::optional<std::vector<double>> hv_ref;
    if (k == 2) hv_ref = std::vector<double>{0.0, 0.0};

    const NsgaRunResult run = nsga2_run_fn(evaluate, k, problem.space.coded_lower(),
                                           problem.space.coded_upper(), config, hv_ref);
    if (history) *history = run.history;

    SolutionSet set;
    set.labels = problem.labels();
    set.directions = problem.directions();
    set.provenance = {"nsga2", config.seed};
    for (std::size_t i : run.front_indices) {
        const auto& ind = run.final_population[i];
        Candidate c;
        c.decision = problem.space.denormalize(ind.coded);
        c.objectives = ObjectiveVector(ind.canonical, ind.raw);
        c.rank = ind.rank;
        c.crowding = ind.crowding;
        c.feasible = !ind.eval_failed;
        set.candidates.push_back(std::move(c));
    }
    return set;
}

}  // namespace sprayopt
