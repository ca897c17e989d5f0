#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sprayopt/desirability.hpp"
#include "sprayopt/problems.hpp"
#include "sprayopt/registry.hpp"
#include "sprayopt/rng.hpp"

using namespace sprayopt;

TEST_CASE("one-sided transforms at the endpoints and midpoints") {
    CHECK(desirability_min(10.0, 0.0, 10.0, 1.0) == 0.0);
    CHECK(desirability_min(0.0, 0.0, 10.0, 1.0) == 1.0);
    CHECK(desirability_min(5.0, 0.0, 10.0, 1.0) == doctest::Approx(0.5));
    CHECK(desirability_min(5.0, 0.0, 10.0, 2.0) == doctest::Approx(0.25));
    CHECK(desirability_min(12.0, 0.0, 10.0, 1.0) == 0.0);
    CHECK(desirability_min(-3.0, 0.0, 10.0, 1.0) == 1.0);

    // hardness under the Problem I bounds
    CHECK(desirability_max(600.0, 600.0, 725.0, 2.5) == 0.0);
    CHECK(desirability_max(725.0, 600.0, 725.0, 2.5) == 1.0);
    CHECK(desirability_max(662.5, 600.0, 725.0, 2.5) ==
          doctest::Approx(std::pow(0.5, 2.5)).epsilon(1e-12));  // 0.17677669...

    CHECK_THROWS_AS(desirability_min(1.0, 5.0, 5.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(desirability_max(1.0, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("maximization transform is monotone nondecreasing") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double f1 = rng.uniform(550.0, 775.0);
        const double f2 = f1 + rng.uniform(0.0, 50.0);
        CHECK(desirability_max(f1, 600.0, 725.0, 2.5) <=
              desirability_max(f2, 600.0, 725.0, 2.5));
    }
}

TEST_CASE("reflection identity holds exactly") {
    Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const double lower = rng.uniform(-5.0, 5.0);
        const double upper = lower + rng.uniform(0.1, 10.0);
        const double shape = rng.uniform(0.1, 4.0);
        const double f = rng.uniform(lower - 2.0, upper + 2.0);
        CHECK(desirability_min(f, lower, upper, shape) ==
              desirability_max(-f, -upper, -lower, shape));  // bitwise
    }
}

TEST_CASE("overall desirability") {
    CHECK(overall_desirability({0.0, 0.9, 1.0}, {1, 1, 1}) == 0.0);
    CHECK(overall_desirability({1.0, 1.0}, {0.5, 0.5}) == 1.0);
    CHECK(overall_desirability({0.25, 1.0}, {1, 1}) == doctest::Approx(0.5).epsilon(1e-14));

    // permutation-invariant under equal weights
    CHECK(overall_desirability({0.3, 0.8, 0.6}, {1, 1, 1}) ==
          doctest::Approx(overall_desirability({0.8, 0.6, 0.3}, {1, 1, 1})).epsilon(1e-14));

    // zero-weighted objectives do not count
    CHECK(overall_desirability({0.0, 0.5}, {0.0, 1.0}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(overall_desirability({0.5}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(overall_desirability({0.5, 0.5}, {1.0}), std::invalid_argument);
}

TEST_CASE("D is zero exactly when a positively weighted d_j is zero") {
    Rng rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + rng.index(4);
        std::vector<double> d(k), w(k);
        bool zero_with_weight = false;
        for (std::size_t j = 0; j < k; ++j) {
            d[j] = rng.index(4) == 0 ? 0.0 : rng.uniform(0.01, 1.0);
            w[j] = rng.index(3) == 0 ? 0.0 : rng.uniform(0.1, 2.0);
            zero_with_weight = zero_with_weight || (d[j] == 0.0 && w[j] > 0.0);
        }
        double wsum = 0.0;
        for (double x : w) wsum += x;
        if (wsum == 0.0) w[0] = 1.0, zero_with_weight = zero_with_weight || d[0] == 0.0;
        const double overall = overall_desirability(d, w);
        if (zero_with_weight)
            CHECK(overall == 0.0);
        else
            CHECK(overall > 0.0);
    }
}

TEST_CASE("values stay inside [0, 1]") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const double d_min = desirability_min(rng.uniform(-20, 20), -1.0, 1.0,
                                              rng.uniform(0.1, 5.0));
        CHECK(d_min >= 0.0);
        CHECK(d_min <= 1.0);
        std::vector<double> d = {rng.uniform(), rng.uniform(), rng.uniform()};
        std::vector<double> w = {rng.uniform(), rng.uniform(), 1.0};
        const double overall = overall_desirability(d, w);
        CHECK(overall >= 0.0);
        CHECK(overall <= 1.0);
    }
}

TEST_CASE("a trivially satisfied spec returns D = 1") {
    ProblemSpec problem = builtin_problem("I");
    // bounds far below anything achievable: d = 1 everywhere
    problem.desirability.spec.objectives = {{Direction::maximize, 1.0, 2.0, 1.0, 0.5},
                                            {Direction::maximize, 0.001, 0.002, 1.0, 0.5}};
    DirectSearchConfig light{5, 1e-8, 500};
    const auto outcome =
        maximize_desirability(problem, problem.desirability.spec, light, 11);
    CHECK(outcome.overall == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(outcome.zero_everywhere);
    CHECK(problem.space.contains(outcome.decision, 1e-9));
}

TEST_CASE("single-objective spec reduces to maximizing that objective") {
    ProblemSpec problem = builtin_problem("I");
    // weight only hardness; a linear ramp over a wide bracket makes D a
    // monotone image of the raw prediction
    problem.desirability.spec.objectives = {{Direction::maximize, 500.0, 800.0, 1.0, 1.0},
                                            {Direction::maximize, 0.0, 1.0, 1.0, 0.0}};
    const auto outcome = maximize_desirability(problem, problem.desirability.spec,
                                               DirectSearchConfig{20, 1e-10, 3000}, 17);
    const auto& reg = ModelRegistry::builtin();
    const auto [gx, grid_best] = oracles::grid_maximize(
        [&](const Vec5& x) { return reg.at("hardness").predict(x); },
        problem.space.coded_lower(), problem.space.coded_upper());
    const double achieved = reg.at("hardness").predict(problem.space.normalize(outcome.decision));
    CHECK(achieved >= grid_best * 0.99);
}

TEST_CASE("determinism and restart-budget monotonicity") {
    const ProblemSpec problem = builtin_problem("I");
    const auto a = maximize_desirability(problem, problem.desirability.spec,
                                         DirectSearchConfig{10, 1e-8, 1500}, 23);
    const auto b = maximize_desirability(problem, problem.desirability.spec,
                                         DirectSearchConfig{10, 1e-8, 1500}, 23);
    CHECK(a.overall == b.overall);
    CHECK(a.decision.pfr == b.decision.pfr);
    CHECK(a.decision.tgf == b.decision.tgf);

    const auto more = maximize_desirability(problem, problem.desirability.spec,
                                            DirectSearchConfig{25, 1e-8, 1500}, 23);
    CHECK(more.overall >= a.overall);
}

TEST_CASE("all-zero desirability is flagged with a compromise point") {
    ProblemSpec problem = builtin_problem("I");
    // unreachable hardness bracket: d1 = 0 everywhere in the box
    problem.desirability.spec.objectives = {{Direction::maximize, 2000.0, 3000.0, 1.0, 0.5},
                                            {Direction::maximize, 0.6, 0.7, 1.0, 0.5}};
    const auto outcome = maximize_desirability(problem, problem.desirability.spec,
                                               DirectSearchConfig{5, 1e-8, 400}, 29);
    CHECK(outcome.overall == 0.0);
    CHECK(outcome.zero_everywhere);
    CHECK(outcome.plateau_surrogate > 0.0);  // efficiency still steers the compromise
    CHECK(problem.space.contains(outcome.decision, 1e-9));
}
