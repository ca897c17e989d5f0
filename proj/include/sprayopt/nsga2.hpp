#ifndef SPRAYOPT_NSGA2_HPP
#define SPRAYOPT_NSGA2_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sprayopt/linalg.hpp"
#include "sprayopt/pareto.hpp"
#include "sprayopt/rng.hpp"

namespace sprayopt {

struct ProblemSpec;

struct NsgaConfig {
    int population = 100;         // even, >= 4
    int generations = 100;
    double crossover_prob = 0.9;  // SBX pair probability
    double eta_crossover = 15.0;
    double mutation_prob = 0.2;   // per coordinate, 1/n default
    double eta_mutation = 20.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct NsgaIndividual {
    Vec5 coded = zero_vec5();
    std::vector<double> canonical;
    std::vector<double> raw;
    int rank = 0;          // 1-based once sorted
    double crowding = 0.0;
    bool eval_failed = false;
};

using NsgaPopulation = std::vector<NsgaIndividual>;

/// Objective evaluation hook: fills canonical (minimization form) and raw
/// values for a coded decision vector. Throwing marks the individual failed
/// and assigns worst-possible objectives.
using NsgaEvaluator =
    std::function<void(const Vec5& coded, std::vector<double>& canonical,
                       std::vector<double>& raw)>;

/// Uniform random population inside the box; deterministic per rng state.
NsgaPopulation nsga_initialize(const Vec5& lower, const Vec5& upper, int n, Rng& rng);

/// Crowded binary tournament on assigned metadata: lower rank wins, then
/// larger crowding, then a fair coin. Throws if metadata is missing.
const Candidate& crowded_tournament(const Candidate& a, const Candidate& b, Rng& rng);

/// Simulated binary crossover; children are clamped into the box. With
/// probability 1 - p_c the parents are copied unchanged.
void sbx_crossover(const Vec5& parent1, const Vec5& parent2, Vec5& child1, Vec5& child2,
                   double eta, double crossover_prob, const Vec5& lower, const Vec5& upper,
                   Rng& rng);

/// Polynomial mutation, each coordinate perturbed with probability p_m,
/// result clamped into the box.
Vec5 polynomial_mutation(const Vec5& x, double eta, double mutation_prob, const Vec5& lower,
                         const Vec5& upper, Rng& rng);

/// Elitist truncation of a merged population to n: whole fronts while they
/// fit, then the splitting front by descending crowding distance. Assigns
/// rank and crowding on the survivors.
NsgaPopulation environmental_selection(NsgaPopulation merged, int n);

struct GenerationRecord {
    int generation = 0;
    std::size_t front_size = 0;  // |F1| of the parent population
    double hypervolume = 0.0;    // NaN when unavailable (k != 2 or no reference)
};

struct NsgaRunResult {
    NsgaPopulation final_population;
    std::vector<std::size_t> front_indices;  // F1 of the final population
    std::vector<GenerationRecord> history;
};

/// Full generation loop over a caller-supplied evaluator and coded box.
NsgaRunResult nsga2_run_fn(const NsgaEvaluator& evaluate, std::size_t num_objectives,
                           const Vec5& lower, const Vec5& upper, const NsgaConfig& config,
                           const std::optional<std::vector<double>>& hv_reference);

/// Runs NSGA-II on a built-in or configured problem and returns the final
/// first front with decision vectors in physical units and rank/crowding
/// metadata. Bitwise-deterministic for fixed (seed, config, problem).
SolutionSet nsga2_run(const ProblemSpec& problem, const NsgaConfig& config,
                      std::vector<GenerationRecord>* history = nullptr);

}  // namespace sprayopt

#endif  // SPRAYOPT_NSGA2_HPP
