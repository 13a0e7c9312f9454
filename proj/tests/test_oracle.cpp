#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <climits>

#include "test_helpers.hpp"
#include "toeprank/errors.hpp"
#include "toeprank/lift.hpp"
#include "toeprank/matching.hpp"
#include "toeprank/oracle.hpp"

using namespace toeprank;

namespace {

LaurentPattern example_a() {
    return LaurentPattern(
        {"r1", "r2"}, {"c1", "c2"},
        {{0, SupportMatrix(2, 2, {{0, 0}})},
         {1, SupportMatrix(2, 2, {{0, 1}, {1, 0}})}});
}

LaurentPattern example_b() {
    return LaurentPattern(
        {"r1", "r2"}, {"c1", "c2"},
        {{0, SupportMatrix(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})},
         {1, SupportMatrix(2, 2, {{0, 0}, {1, 1}})}});
}

} // namespace

TEST_CASE("direct matching oracle on the worked examples") {
    CHECK(term_rank_direct(expand_toeplitz(example_a(), 1)) == 1);
    CHECK(term_rank_direct(expand_toeplitz(example_a(), 2)) == 2);
    CHECK(term_rank_direct(expand_toeplitz(example_a(), 3)) == 4);
    CHECK(term_rank_direct(expand_toeplitz(example_b(), 2)) == 4);
    CHECK(term_rank_direct(ToeplitzPattern(2, {"r"}, {"c"}, {})) == 0);
}

TEST_CASE("assignment enumeration on the first example") {
    const WeightedBipartiteGraph g = build_graph(example_a());
    CHECK(assignment_brute(g, 0).feasible);
    CHECK(assignment_brute(g, 0).value == 0);
    CHECK(assignment_brute(g, 1).value == 0);
    CHECK(assignment_brute(g, 2).value == -2);
    CHECK_FALSE(assignment_brute(g, 3).feasible);
    CHECK_THROWS_AS(assignment_brute(g, -1), ValidationError);
}

TEST_CASE("assignment enumeration guard") {
    std::vector<WeightedEdge> edges;
    for (Index r = 0; r < 5; ++r) {
        for (Index c = 0; c < 5; ++c) {
            edges.push_back({r, c, 0});
        }
    }
    const WeightedBipartiteGraph g(testutil::make_labels("r", 5),
                                   testutil::make_labels("c", 5), edges);
    CHECK_THROWS_AS(assignment_brute(g, 2), GuardError);
}

TEST_CASE("exhaustive sweep on the worked examples") {
    CHECK(max_rank_exhaustive_gf2(example_a(), 1) == 1);
    CHECK(max_rank_exhaustive_gf2(example_a(), 2) == 2);
    CHECK(max_rank_exhaustive_gf2(example_b(), 2) == 4);
}

TEST_CASE("exhaustive sweep guard") {
    std::vector<Entry> cells;
    for (Index r = 0; r < 5; ++r) {
        for (Index c = 0; c < 4; ++c) {
            cells.push_back({r, c});
        }
    }
    const LaurentPattern h(testutil::make_labels("r", 5),
                           testutil::make_labels("c", 4),
                           {{0, SupportMatrix(5, 4, cells)}});
    CHECK_THROWS_AS(max_rank_exhaustive_gf2(h, 1), GuardError);
}

TEST_CASE("oracles agree with each other on random patterns") {
    testutil::Rng rng(51);
    for (int trial = 0; trial < 120; ++trial) {
        const LaurentPattern h = testutil::random_pattern(rng, 3, 3, 2, 35, 10);
        const int k = rng.range(1, 3);
        const ToeplitzPattern t = expand_toeplitz(h, k);
        CHECK(max_rank_exhaustive_gf2(h, k) == term_rank_direct(t));
    }
}

TEST_CASE("assignment enumeration agrees with the curve solver") {
    testutil::Rng rng(52);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedBipartiteGraph g = testutil::random_graph(rng, 5, 5, 40, -5);
        if (g.edges().size() > 20) continue;
        ++checked;
        const DeltaCurve curve = delta_curve(g);
        for (Index mu = 0; mu <= curve.mu_hat; ++mu) {
            const BruteAssignment b = assignment_brute(g, mu);
            CHECK(b.feasible);
            CHECK(b.value == curve.delta[mu]);
        }
        CHECK_FALSE(assignment_brute(g, curve.mu_hat + 1).feasible);
    }
    CHECK(checked > 120);
}
