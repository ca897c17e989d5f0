#include "sprayopt/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sprayopt {

namespace {

void check_lengths(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("objective vectors have mismatched lengths");
    if (a.empty()) throw std::invalid_argument("objective vectors must be non-empty");
}

}  // namespace

ObjectiveVector::ObjectiveVector(std::vector<double> canonical, std::vector<double> raw)
    : values(std::move(canonical)), raw_values(std::move(raw)) {
    if (values.size() != raw_values.size() || values.empty())
        throw std::invalid_argument("objective vector requires equal-length values, k >= 1");
}

bool weakly_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    check_lengths(a, b);
    bool strictly_better_somewhere = false;
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (a[l] > b[l]) return false;
        if (a[l] < b[l]) strictly_better_somewhere = true;
    }
    return strictly_better_somewhere;
}

bool strongly_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    check_lengths(a, b);
    for (std::size_t l = 0; l < a.size(); ++l)
        if (a[l] >= b[l]) return false;
    return true;
}

std::vector<std::vector<std::size_t>> non_dominated_sort_values(
    const std::vector<std::vector<double>>& objectives) {
    const std::size_t n = objectives.size();
    if (n == 0) throw std::invalid_argument("non_dominated_sort: empty set");

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> domination_count(n, 0);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (weakly_dominates(objectives[p], objectives[q])) {
                dominated[p].push_back(q);
                ++domination_count[q];
            } else if (weakly_dominates(objectives[q], objectives[p])) {
                dominated[q].push_back(p);
                ++domination_count[p];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0) current.push_back(i);

    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(SolutionSet& set) {
    std::vector<std::vector<double>> objs;
    objs.reserve(set.size());
    for (const auto& c : set.candidates) objs.push_back(c.objectives.values);
    const auto fronts = non_dominated_sort_values(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t i : fronts[f]) set.candidates[i].rank = static_cast<int>(f) + 1;
    return fronts;
}

std::vector<double> crowding_distance_values(const std::vector<std::vector<double>>& front) {
    const std::size_t n = front.size();
    if (n == 0) throw std::invalid_argument("crowding_distance: empty front");
    const std::size_t k = front[0].size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }

    std::vector<std::size_t> order(n);
    for (std::size_t l = 0; l < k; ++l) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][l] < front[b][l];
        });
        const double lo = front[order.front()][l];
        const double hi = front[order.back()][l];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double range = hi - lo;
        if (range <= 0.0) continue;  // no spread, no discrimination
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const std::size_t idx = order[i];
            if (dist[idx] == inf) continue;
            dist[idx] += (front[order[i + 1]][l] - front[order[i - 1]][l]) / range;
        }
    }
    return dist;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    std::vector<std::vector<double>> values;
    values.reserve(front.size());
    for (const auto& o : front) values.push_back(o.values);
    return crowding_distance_values(values);
}

void assign_rank_and_crowding(SolutionSet& set) {
    const auto fronts = non_dominated_sort(set);
    for (const auto& front : fronts) {
        std::vector<ObjectiveVector> objs;
        objs.reserve(front.size());
        for (std::size_t i : front) objs.push_back(set.candidates[i].objectives);
        const auto dist = crowding_distance(objs);
        for (std::size_t i = 0; i < front.size(); ++i)
            set.candidates[front[i]].crowding = dist[i];
    }
}

std::vector<double> ideal_vector(const SolutionSet& set) {
    if (set.empty()) throw std::invalid_argument("ideal_vector: empty set");
    std::vector<double> ideal = set.candidates.front().objectives.values;
    for (const auto& c : set.candidates)
        for (std::size_t l = 0; l < ideal.size(); ++l)
            ideal[l] = std::min(ideal[l], c.objectives.values[l]);
    return ideal;
}

SolutionSet pareto_filter(const SolutionSet& set) {
    if (set.empty()) throw std::invalid_argument("pareto_filter: empty set");
    SolutionSet out;
    out.labels = set.labels;
    out.directions = set.directions;
    out.provenance = set.provenance;
    const std::size_t n = set.size();
    for (std::size_t p = 0; p < n; ++p) {
        bool dominated = false;
        for (std::size_t q = 0; q < n && !dominated; ++q) {
            if (q == p) continue;
            dominated = weakly_dominates(set.candidates[q].objectives.values,
                                         set.candidates[p].objectives.values);
        }
        if (!dominated) {
            Candidate c = set.candidates[p];
            c.rank = 1;
            out.candidates.push_back(std::move(c));
        }
    }
    return out;
}

double hypervolume_2d(const std::vector<std::vector<double>>& front,
                      const std::vector<double>& reference) {
    if (reference.size() != 2) throw std::invalid_argument("hypervolume_2d: k must be 2");
    if (front.empty()) return 0.0;
    for (const auto& p : front) {
        if (p.size() != 2) throw std::invalid_argument("hypervolume_2d: k must be 2");
        if (p[0] > reference[0] || p[1] > reference[1])
            throw std::invalid_argument("hypervolume_2d: point does not dominate the reference");
    }
    std::vector<std::vector<double>> pts = front;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    double area = 0.0;
    double best_second = reference[1];
    for (const auto& p : pts) {
        if (p[1] < best_second) {
            area += (reference[0] - p[0]) * (best_second - p[1]);
            best_second = p[1];
        }
    }
    return area;
}

}  // namespace sprayopt
