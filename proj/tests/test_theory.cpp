#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lasnet/errors.hpp"
#include "lasnet/rng.hpp"
#include "lasnet/theory.hpp"
#include "test_util.hpp"

using namespace lasnet;

TEST_CASE("per-edge error probabilities") {
    const ErrorRatePair r{0.1, 0.1};
    CHECK(edge_error_prob(LasRule::Intersection, r, r, false) == doctest::Approx(0.01));
    CHECK(edge_error_prob(LasRule::Union, r, r, false) == doctest::Approx(0.19));
    CHECK(edge_error_prob(LasRule::Union, {0, 0}, {0, 0}, true) == 0.0);
    CHECK(edge_error_prob(LasRule::Intersection, {0, 0}, {0, 0}, false) == 0.0);

    // asymmetric informants
    CHECK(edge_error_prob(LasRule::Intersection, {0.2, 0.5}, {0.3, 0.1}, true) ==
          doctest::Approx(1.0 - 0.5 * 0.9));
    CHECK(edge_error_prob(LasRule::Union, {0.2, 0.5}, {0.3, 0.1}, false) ==
          doctest::Approx(1.0 - 0.8 * 0.7));
    CHECK_THROWS_AS(edge_error_prob(LasRule::Union, {1.2, 0}, {0, 0}, true), ValidationError);
}

TEST_CASE("error probability is monotone in each rate on [0, 0.5]^2") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const double lo = rng.uniform() * 0.5;
        const double hi = lo + rng.uniform() * (0.5 - lo);
        const double other = rng.uniform() * 0.5;
        const ErrorRatePair shared{other, other};
        for (const LasRule rule : {LasRule::Union, LasRule::Intersection}) {
            for (const bool present : {true, false}) {
                CHECK(edge_error_prob(rule, {lo, other}, shared, present) <=
                      edge_error_prob(rule, {hi, other}, shared, present) + 1e-15);
                CHECK(edge_error_prob(rule, {other, lo}, shared, present) <=
                      edge_error_prob(rule, {other, hi}, shared, present) + 1e-15);
            }
        }
    }
}

TEST_CASE("homogeneous expected hamming") {
    const ErrorRatePair r{0.1, 0.1};
    CHECK(expected_hamming(LasRule::Intersection, 10, 90, r) == doctest::Approx(2.8));
    CHECK(expected_hamming(LasRule::Union, 10, 90, r) == doctest::Approx(17.2));
    CHECK(expected_hamming(LasRule::Union, 10, 90, {0, 0}) == 0.0);
    CHECK(expected_hamming(LasRule::Intersection, 10, 90, {0, 0}) == 0.0);
}

TEST_CASE("heterogeneous expected hamming reduces to the homogeneous formula") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_below(8));
        const DirectedGraph g = testutil::random_graph(n, rng.uniform(), rng);
        const ErrorRatePair shared{rng.uniform(), rng.uniform()};
        const std::vector<ErrorRatePair> rates(static_cast<std::size_t>(n), shared);
        const long long m = g.edge_count();
        const long long nulls = g.pair_count() - m;
        for (const LasRule rule : {LasRule::Union, LasRule::Intersection}) {
            CHECK(expected_hamming(rule, g, rates) ==
                  doctest::Approx(expected_hamming(rule, m, nulls, shared)).epsilon(1e-10));
        }
    }
}

TEST_CASE("heterogeneous expected hamming matches a hand-built sum") {
    // 3 vertices, one edge 0->1, distinct rates
    DirectedGraph g(3);
    g.set_edge(0, 1, true);
    const std::vector<ErrorRatePair> rates = {{0.1, 0.2}, {0.3, 0.4}, {0.05, 0.5}};
    // union: present (0,1): fn0*fn1 = 0.08; absent pairs use 1-(1-fp_i)(1-fp_j)
    const double expected_union = 0.2 * 0.4                      // (0,1)
                                  + (1 - 0.9 * 0.7)              // (1,0)
                                  + 2 * (1 - 0.9 * 0.95)         // (0,2), (2,0)
                                  + 2 * (1 - 0.7 * 0.95);        // (1,2), (2,1)
    CHECK(expected_hamming(LasRule::Union, g, rates) == doctest::Approx(expected_union));
    CHECK_THROWS_AS(expected_hamming(LasRule::Union, g, std::vector<ErrorRatePair>(2)),
                    DimensionError);
}

TEST_CASE("critical density") {
    CHECK(critical_density({0.1, 0.3}) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(critical_density({0.3, 0.1}) == doctest::Approx(0.7).epsilon(1e-13));
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double e = 0.01 + rng.uniform() * 0.98;
        CHECK(critical_density({e, e}) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(critical_density({0.0, 0.3}) == 0.0);
    CHECK(critical_density({1.0, 0.3}) == 0.0);
    CHECK_THROWS_AS(critical_density({0.1, 0.0}), DegenerateRateError);
    CHECK_THROWS_AS(critical_density({0.1, 1.0}), DegenerateRateError);
}

TEST_CASE("crossover exactness against the expected-error formulas") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const double fp = 0.01 + rng.uniform() * 0.45;
        const double fn = 0.01 + rng.uniform() * (0.98 - fp);  // keep fp + fn < 1
        const ErrorRatePair r{fp, fn};
        const double dstar = critical_density({fp, fn});
        const long long total = 20 + static_cast<long long>(rng.uniform_below(400));
        const long long m = static_cast<long long>(rng.uniform_below(total + 1));
        const long long nulls = total - m;
        const double d = static_cast<double>(m) / static_cast<double>(total);
        const double gap = expected_hamming(LasRule::Intersection, m, nulls, r) -
                           expected_hamming(LasRule::Union, m, nulls, r);
        if (d < dstar - 1e-9) {
            CHECK(gap < 0.0);
            CHECK(compare_rules(m, nulls, r) == RulePreference::IntersectionBetter);
        } else if (d > dstar + 1e-9) {
            CHECK(gap > 0.0);
            CHECK(compare_rules(m, nulls, r) == RulePreference::UnionBetter);
        }
    }
    // exact tie: M/N = fp(1-fp)/(fn(1-fn)) with fp=0.1, fn=0.3 gives 3/7
    CHECK(compare_rules(3, 7, {0.1, 0.3}) == RulePreference::Tie);
    CHECK(std::abs(expected_hamming(LasRule::Intersection, 3, 7, {0.1, 0.3}) -
                   expected_hamming(LasRule::Union, 3, 7, {0.1, 0.3})) < 1e-12);
}

TEST_CASE("expected hamming agrees with direct Monte Carlo") {
    // independent per-edge realizations at fixed truth, hand-rolled here so
    // the check does not route through the simulate module
    Rng rng(31337);
    const int n = 10;
    const DirectedGraph truth = testutil::random_graph(n, 0.25, rng);
    const long long m = truth.edge_count();
    const long long nulls = truth.pair_count() - m;
    const ErrorRatePair r{0.12, 0.3};
    const int reps = 100000;

    for (const LasRule rule : {LasRule::Union, LasRule::Intersection}) {
        double sum = 0.0, sumsq = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            long long errors = 0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (j == k) continue;
                    const bool t = truth.edge(j, k);
                    const bool a = t ? !rng.bernoulli(r.fn) : rng.bernoulli(r.fp);
                    const bool b = t ? !rng.bernoulli(r.fn) : rng.bernoulli(r.fp);
                    const bool est = rule == LasRule::Union ? (a || b) : (a && b);
                    if (est != t) ++errors;
                }
            sum += static_cast<double>(errors);
            sumsq += static_cast<double>(errors) * static_cast<double>(errors);
        }
        const double mean = sum / reps;
        const double var = (sumsq - sum * sum / reps) / (reps - 1.0);
        const double se = std::sqrt(var / reps);
        CHECK(std::abs(mean - expected_hamming(rule, m, nulls, r)) < 4.0 * se);
    }
}

TEST_CASE("correctness grids: values, duality, symmetry") {
    const std::vector<double> grid = grid_values(0.0, 1.0, 0.1);
    const RateGrid inter_absent = correctness_grid(LasRule::Intersection, false, grid, grid);
    const RateGrid union_present = correctness_grid(LasRule::Union, true, grid, grid);

    // intersection/absent at fp=0.3 -> 0.91; union/present at fn=0.3 -> 0.91
    CHECK(inter_absent.at(3, 5) == doctest::Approx(1.0 - 0.09));
    CHECK(union_present.at(5, 3) == doctest::Approx(1.0 - 0.09));
    CHECK(inter_absent.at(0, 0) == 1.0);
    CHECK(union_present.at(0, 0) == 1.0);

    // duality: union/present equals intersection/absent with axes exchanged
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            CHECK(std::abs(union_present.at(i, j) - inter_absent.at(j, i)) < 1e-12);
}

TEST_CASE("critical density grid flags the perversely-informative region") {
    const std::vector<double> fp = grid_values(0.0, 1.0, 0.1);
    const std::vector<double> fn = grid_values(0.1, 0.9, 0.1);
    const RateGrid g = critical_density_grid(fp, fn);
    for (std::size_t i = 0; i < fp.size(); ++i)
        for (std::size_t j = 0; j < fn.size(); ++j) {
            CHECK(g.at(i, j) == doctest::Approx(critical_density({fp[i], fn[j]})));
            CHECK(g.perverse_at(i, j) == (fp[i] + fn[j] > 1.0));
        }
    // the equal-rate diagonal sits at one half
    for (std::size_t i = 1; i < fp.size() - 1; ++i) {
        const std::size_t j = i - 1;  // fn grid starts at 0.1
        CHECK(g.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
    }
    // (0.6, 0.6): half, but flagged perverse
    CHECK(g.at(6, 5) == doctest::Approx(0.5));
    CHECK(g.perverse_at(6, 5));
}

TEST_CASE("grid_values endpoints are exact") {
    const std::vector<double> g = grid_values(0.0, 1.0, 0.01);
    CHECK(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
}
