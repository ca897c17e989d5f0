#ifndef SPRAYOPT_PARETO_HPP
#define SPRAYOPT_PARETO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sprayopt/params.hpp"

namespace sprayopt {

enum class Direction { minimize, maximize };

inline double canonicalize(double raw, Direction d) {
    return d == Direction::maximize ? -raw : raw;
}

/// Objective values in minimization canonical form (maximized objectives
/// pre-negated) alongside the raw values in natural units. Labels and
/// directions are carried by the owning SolutionSet; all members of a set
/// share them.
struct ObjectiveVector {
    std::vector<double> values;      // canonical, minimize-all
    std::vector<double> raw_values;  // natural units, for reporting

    ObjectiveVector() = default;
    ObjectiveVector(std::vector<double> canonical, std::vector<double> raw);

    std::size_t size() const { return values.size(); }
};

struct Candidate {
    ParameterVector decision;
    ObjectiveVector objectives;
    std::optional<int> rank;        // 1-based front index
    std::optional<double> crowding; // +inf on front boundaries
    bool feasible = true;
};

struct Provenance {
    std::string method;
    std::uint64_t seed = 0;
};

struct SolutionSet {
    std::vector<std::string> labels;
    std::vector<Direction> directions;
    std::vector<Candidate> candidates;
    Provenance provenance;

    std::size_t size() const { return candidates.size(); }
    bool empty() const { return candidates.empty(); }
};

/// a weakly dominates b: no worse everywhere, strictly better somewhere.
/// Canonical minimization form. Throws on length mismatch.
bool weakly_dominates(const std::vector<double>& a, const std::vector<double>& b);

/// a strongly dominates b: strictly better everywhere.
bool strongly_dominates(const std::vector<double>& a, const std::vector<double>& b);

/// Fast non-dominated sort (dominance counts + dominated lists, O(k n^2))
/// over plain canonical objective vectors. Fronts partition the input.
std::vector<std::vector<std::size_t>> non_dominated_sort_values(
    const std::vector<std::vector<double>>& objectives);

/// Set-level wrapper: returns the fronts and assigns 1-based ranks to the
/// candidates in place.
std::vector<std::vector<std::size_t>> non_dominated_sort(SolutionSet& set);

/// Crowding distances for one front. Boundary members per objective get
/// +inf; interior members accumulate the normalized neighbour gap. A
/// degenerate objective range contributes zero. Ties sort stably by input
/// index. Throws on an empty front.
std::vector<double> crowding_distance_values(const std::vector<std::vector<double>>& front);
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

/// Assigns rank and crowding metadata to every candidate.
void assign_rank_and_crowding(SolutionSet& set);

/// Componentwise minimum of canonical values (empirical ideal vector).
std::vector<double> ideal_vector(const SolutionSet& set);

/// The first front only, order-stable. Idempotent.
SolutionSet pareto_filter(const SolutionSet& set);

/// Area dominated by a 2-objective front up to the reference point
/// (canonical form). Every point must weakly dominate the reference.
double hypervolume_2d(const std::vector<std::vector<double>>& front,
                      const std::vector<double>& reference);

}  // namespace sprayopt

#endif  // SPRAYOPT_PARETO_HPP
