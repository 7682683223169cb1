#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qslab/pattern.hpp"
#include "qslab/problems.hpp"
#include "qslab/qs_ops.hpp"

using namespace qslab;

namespace {

PartialMatrix pattern_from_rows(const std::vector<std::string>& rows) {
    PartialMatrix p(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            p.set(r, c, rows[r][c] == '*' ? Cell::Star : (rows[r][c] == '1' ? Cell::One : Cell::Zero));
        }
    }
    return p;
}

BitMatrix random_bitmatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int one_percent) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<int>(rng() % 100) < one_percent);
    }
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("pattern");

TEST_CASE("gt pattern embeds identically into a larger gt matrix") {
    auto embedding = contains_pattern(gen_gt(5), to_partial(gen_gt(3)));
    REQUIRE(embedding.has_value());
    CHECK(embedding->rows == std::vector<std::size_t>{0, 1, 2});
    CHECK(embedding->cols == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("stars are unconstrained") {
    auto m = to_bitmatrix(pattern_from_rows({"11", "10"}));
    auto embedding = contains_pattern(m, pattern_from_rows({"1*", "*0"}));
    REQUIRE(embedding.has_value());
    CHECK(embedding->rows == std::vector<std::size_t>{0, 1});
    CHECK(embedding->cols == std::vector<std::size_t>{0, 1});
}

TEST_CASE("distinct all-ones 2x3 is absent from the 7-bit 1-distance matrix") {
    PatternSearchOptions opt;
    opt.require_distinct = true;
    opt.budget = 100'000'000;
    CHECK_FALSE(contains_pattern(gen_ehd(7, 1), pattern_from_rows({"111", "111"}), opt).has_value());
}

TEST_CASE("budget exhaustion is an error, not absence") {
    PatternSearchOptions opt;
    opt.budget = 3;
    CHECK_THROWS_AS(contains_pattern(gen_ehd(5, 2), pattern_from_rows({"111", "111"}), opt), budget_error);
}

TEST_CASE("agrees with full enumeration on small matrices") {
    std::mt19937_64 rng(29);
    const std::vector<PartialMatrix> patterns = {
        pattern_from_rows({"11", "11"}),
        pattern_from_rows({"1*", "01"}),
        pattern_from_rows({"10", "*1"}),
        pattern_from_rows({"111"}),
        pattern_from_rows({"1", "0", "1"}),
    };
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        auto m = random_bitmatrix(rng, rows, cols, 30 + rng() % 50);
        const bool distinct = trial % 2 == 0;
        PatternSearchOptions opt;
        opt.require_distinct = distinct;
        for (const auto& p : patterns) {
            CHECK(contains_pattern(m, p, opt).has_value() ==
                  testing::naive_contains_pattern(m, p, distinct));
        }
    }
    // a few trials at the full 12-per-side agreement scale
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t rows = 9 + rng() % 4, cols = 9 + rng() % 4;
        auto m = random_bitmatrix(rng, rows, cols, 15 + rng() % 60);
        const bool distinct = trial % 2 == 0;
        PatternSearchOptions opt;
        opt.require_distinct = distinct;
        for (const auto& p : patterns) {
            CHECK(contains_pattern(m, p, opt).has_value() ==
                  testing::naive_contains_pattern(m, p, distinct));
        }
    }
}

TEST_CASE("negating host and pattern preserves the embedding") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_bitmatrix(rng, 2 + rng() % 7, 2 + rng() % 7, 50);
        auto p = pattern_from_rows(trial % 2 ? std::vector<std::string>{"1*", "00"}
                                             : std::vector<std::string>{"01", "1*"});
        auto direct = contains_pattern(m, p);
        auto negated = contains_pattern(negate(m), negate(p));
        CHECK(direct.has_value() == negated.has_value());
        if (direct) {
            CHECK(direct->rows == negated->rows);
            CHECK(direct->cols == negated->cols);
        }
    }
}

TEST_CASE("returned embeddings satisfy every non-star constraint") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 80; ++trial) {
        auto m = random_bitmatrix(rng, 2 + rng() % 8, 2 + rng() % 8, 40);
        auto p = pattern_from_rows({"1*", "*0"});
        PatternSearchOptions opt;
        opt.require_distinct = trial % 2 == 0;
        auto embedding = contains_pattern(m, p, opt);
        if (!embedding) continue;
        for (std::size_t r = 0; r < p.rows(); ++r) {
            for (std::size_t c = 0; c < p.cols(); ++c) {
                if (p.get(r, c) == Cell::Star) continue;
                CHECK(m.get(embedding->rows[r], embedding->cols[c]) == (p.get(r, c) == Cell::One));
            }
        }
        if (opt.require_distinct) {
            CHECK(testing::naive_rows_distinct(m, embedding->rows));
            CHECK(testing::naive_cols_distinct(m, embedding->cols));
        }
    }
}

TEST_SUITE_END();
