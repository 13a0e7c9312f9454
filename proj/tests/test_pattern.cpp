#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_helpers.hpp"
#include "toeprank/errors.hpp"
#include "toeprank/pattern.hpp"

using namespace toeprank;

namespace {

LaurentPattern example_a() {
    return LaurentPattern(
        {"r1", "r2"}, {"c1", "c2"},
        {{0, SupportMatrix(2, 2, {{0, 0}})},
         {1, SupportMatrix(2, 2, {{0, 1}, {1, 0}})}});
}

} // namespace

TEST_CASE("support matrix sorts and validates entries") {
    SupportMatrix s(2, 3, {{1, 2}, {0, 0}, {0, 2}});
    CHECK(s.nonzeros() == std::vector<Entry>{{0, 0}, {0, 2}, {1, 2}});
    CHECK(s.contains({0, 2}));
    CHECK_FALSE(s.contains({1, 0}));

    CHECK_THROWS_AS(SupportMatrix(2, 2, {{0, 0}, {0, 0}}), ValidationError);
    CHECK_THROWS_AS(SupportMatrix(2, 2, {{2, 0}}), ValidationError);
    CHECK_THROWS_AS(SupportMatrix(2, 2, {{0, -1}}), ValidationError);
}

TEST_CASE("pattern accessors") {
    const LaurentPattern h = example_a();
    CHECK(h.num_rows() == 2);
    CHECK(h.num_cols() == 2);
    CHECK(h.max_index() == 1);
    REQUIRE(h.coefficient(0) != nullptr);
    CHECK(h.coefficient(0)->nonzeros() == std::vector<Entry>{{0, 0}});
    CHECK(h.coefficient(2) == nullptr);
    CHECK(h.row_index("r2") == 1);
    CHECK(h.col_index("c1") == 0);
    CHECK_THROWS_AS(h.row_index("c1"), ValidationError);
    CHECK_THROWS_AS(h.col_index("nope"), ValidationError);

    CHECK(h.indices_at_or_above(1) == std::vector<int>{1});
    CHECK(h.indices_at_or_above(2).empty());
}

TEST_CASE("pattern validation") {
    CHECK_THROWS_AS(LaurentPattern({"r", "r"}, {"c"}, {}), ValidationError);
    CHECK_THROWS_AS(LaurentPattern({"r"}, {}, {}), ValidationError);
    CHECK_THROWS_AS(LaurentPattern({"r"}, {""}, {}), ValidationError);
    CHECK_THROWS_AS(
        LaurentPattern({"r"}, {"c"}, {{-1, SupportMatrix(1, 1, {})}}),
        ValidationError);
    CHECK_THROWS_AS(LaurentPattern({"r"}, {"c"},
                                   {{0, SupportMatrix(1, 1, {})},
                                    {0, SupportMatrix(1, 1, {})}}),
                    ValidationError);
    CHECK_THROWS_AS(
        LaurentPattern({"r"}, {"c"}, {{0, SupportMatrix(2, 1, {})}}),
        ValidationError);
}

TEST_CASE("coefficients stored sorted by index") {
    const LaurentPattern h({"r"}, {"c"},
                           {{3, SupportMatrix(1, 1, {{0, 0}})},
                            {0, SupportMatrix(1, 1, {})},
                            {1, SupportMatrix(1, 1, {{0, 0}})}});
    CHECK(h.coefficients()[0].index == 0);
    CHECK(h.coefficients()[1].index == 1);
    CHECK(h.coefficients()[2].index == 3);
    CHECK(h.coefficient(2) == nullptr);
    CHECK(h.max_index() == 3);
}

TEST_CASE("expansion of the first example at k = 2") {
    const ToeplitzPattern t = expand_toeplitz(example_a(), 2);
    CHECK(t.k() == 2);
    CHECK(t.base_rows() == 2);
    CHECK(t.num_rows() == 4);
    CHECK(t.num_cols() == 4);
    const std::vector<ToeplitzPattern::BlockEntry> want{
        {1, 0, 1, 0}, {2, 0, 1, 1}, {2, 0, 2, 0}, {2, 1, 1, 0}};
    CHECK(t.nonzeros() == want);
    CHECK(t.contains({2, 0, 2, 0}));
    CHECK_FALSE(t.contains({1, 0, 1, 1}));
    CHECK(t.flat_row(2, 1) == 3);
    CHECK(t.flat_col(1, 1) == 1);
}

TEST_CASE("expansion ignores coefficient indices at or above k") {
    const LaurentPattern h({"r1"}, {"c1"}, {{2, SupportMatrix(1, 1, {{0, 0}})}});
    CHECK(expand_toeplitz(h, 2).nonzeros().empty());
    CHECK(expand_toeplitz(h, 3).nonzeros() ==
          std::vector<ToeplitzPattern::BlockEntry>{{3, 0, 1, 0}});
    CHECK_THROWS_AS(expand_toeplitz(h, 0), ValidationError);
}

TEST_CASE("expanded entry count is the weighted sum of coefficient sizes") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const LaurentPattern h = testutil::random_pattern(rng, 4, 4, 3, 35, 40);
        const int k = rng.range(1, 4);
        std::size_t want = 0;
        for (const Coefficient& co : h.coefficients()) {
            if (co.index < k) {
                want += static_cast<std::size_t>(k - co.index) *
                        co.support.nonzeros().size();
            }
        }
        CHECK(expand_toeplitz(h, k).nonzeros().size() == want);
    }
}

TEST_CASE("toeplitz pattern rejects upper blocks and bad levels") {
    CHECK_THROWS_AS(ToeplitzPattern(2, {"r"}, {"c"}, {{1, 0, 2, 0}}),
                    ValidationError);
    CHECK_THROWS_AS(ToeplitzPattern(2, {"r"}, {"c"}, {{3, 0, 1, 0}}),
                    ValidationError);
    CHECK_THROWS_AS(ToeplitzPattern(2, {"r"}, {"c"}, {{1, 1, 1, 0}}),
                    ValidationError);
    CHECK_THROWS_AS(ToeplitzPattern(2, {"r"}, {"c"},
                                    {{1, 0, 1, 0}, {1, 0, 1, 0}}),
                    ValidationError);
}

TEST_CASE("parameter index of the first example") {
    const ParameterIndex params = index_parameters(example_a(), 2);
    REQUIRE(params.size() == 3);
    const std::vector<ParamTriple> want{{0, 0, 0}, {1, 0, 1}, {1, 1, 0}};
    CHECK(params.triples() == want);
    CHECK(params.position({1, 0, 1}) == 1);
    CHECK(params.position({0, 1, 1}) == -1);

    CHECK(index_parameters(example_a(), 1).size() == 1);
}

TEST_CASE("parameter count matches the coefficient supports below k") {
    testutil::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const LaurentPattern h = testutil::random_pattern(rng, 4, 4, 3, 35, 40);
        const int k = rng.range(1, 4);
        std::size_t want = 0;
        for (const Coefficient& co : h.coefficients()) {
            if (co.index < k) want += co.support.nonzeros().size();
        }
        CHECK(index_parameters(h, k).size() == want);
    }
}
