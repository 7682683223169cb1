#include <random>
#include <sstream>

#include "doctest.h"
#include "qslab/matrix.hpp"
#include "qslab/problems.hpp"
#include "qslab/qs_ops.hpp"
#include "qslab/rng.hpp"

using namespace qslab;

namespace {

BitMatrix from_rows(const std::vector<std::string>& rows) {
    BitMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c] == '1');
    }
    return m;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, bool labelled) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1u);
    }
    if (labelled) {
        m.labels.dim = 5;
        auto strings = random_string_set(rng, rows + cols, 5);
        m.labels.rows.assign(strings.begin(), strings.begin() + rows);
        m.labels.cols.assign(strings.begin() + rows, strings.end());
    }
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("matrix");

TEST_CASE("bits basics") {
    Bits b = Bits::from_string("0110000");
    CHECK(b.size() == 7);
    CHECK(b.to_string() == "0110000");
    CHECK(b.count() == 2);
    CHECK(Bits::of_integer(5, 4).to_string() == "0101");
    CHECK(hamming(Bits::from_string("0011000"), Bits::from_string("1010000")) == 2);
    CHECK(Bits::from_string("001") < Bits::from_string("010"));

    Bits x = Bits::from_string("10110");
    std::vector<int> positions = {0, 2, 4};
    CHECK(x.extract(positions).to_string() == "110");
    CHECK(x.prefix(3).to_string() == "101");
    CHECK((~x).to_string() == "01001");
}

TEST_CASE("bits lexicographic order matches string order on random data") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 130;
        Bits a = random_bits(rng, n), b = random_bits(rng, n);
        CHECK((a < b) == (a.to_string() < b.to_string()));
    }
}

TEST_CASE("identity spec returns the same matrix") {
    auto m = gen_ehd(3, 1);
    CHECK(apply_qs_ops(m, {}) == m);
    CHECK(apply_qs_ops(m, {QsOp::select({}, {})}) == m);
}

TEST_CASE("duplicating row 0 stacks a copy in place") {
    auto m = from_rows({"10", "01"});
    auto out = apply_qs_ops(m, {QsOp::duplicate_rows({2, 1})});
    CHECK(out == from_rows({"10", "10", "01"}));
}

TEST_CASE("selecting row 1 and column 0 gives the 1x1 submatrix") {
    auto m = from_rows({"10", "01"});
    auto out = apply_qs_ops(m, {QsOp::select({1}, {0})});
    CHECK(out == from_rows({"0"}));
}

TEST_CASE("malformed steps name the offending op") {
    auto m = from_rows({"10", "01"});
    CHECK_THROWS_WITH_AS(apply_qs_ops(m, {QsOp::permute_rows({0, 0})}),
                         doctest::Contains("qs op 0"), domain_error);
    CHECK_THROWS_AS(apply_qs_ops(m, {QsOp::select({1, 0}, {})}), domain_error);
    CHECK_THROWS_AS(apply_qs_ops(m, {QsOp::select({5}, {})}), domain_error);
    CHECK_THROWS_AS(apply_qs_ops(m, {QsOp::duplicate_cols({0, 1})}), domain_error);
}

TEST_CASE("negate is an entrywise involution") {
    CHECK(negate(from_rows({"10", "01"})) == from_rows({"01", "10"}));
    CHECK(negate(from_rows({"111", "111"})) == from_rows({"000", "000"}));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(rng, 1 + rng() % 9, 1 + rng() % 9, false);
        CHECK(negate(negate(m)) == m);
    }
}

TEST_CASE("labels travel with rows and columns") {
    auto m = gen_equality(2);
    auto out = apply_qs_ops(m, {QsOp::permute_rows({2, 0, 1, 3}), QsOp::select({0, 2}, {1, 3})});
    REQUIRE(out.rows() == 2);
    CHECK(out.labels.rows[0].to_string() == "10");
    CHECK(out.labels.rows[1].to_string() == "01");
    CHECK(out.labels.cols[0].to_string() == "01");
    CHECK(out.labels.cols[1].to_string() == "11");
    // entries moved, never rewritten
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            CHECK(out.get(r, c) == (out.labels.rows[r] == out.labels.cols[c]));
        }
    }
}

TEST_CASE("composing specs equals applying the concatenation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_matrix(rng, 2 + rng() % 6, 2 + rng() % 6, false);
        QsOpSpec s1 = {QsOp::duplicate_rows(std::vector<std::size_t>(m.rows(), 1 + rng() % 2))};
        std::vector<std::size_t> perm(m.rows() + std::count(s1[0].copies.begin(), s1[0].copies.end(), 2));
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        QsOpSpec s2 = {QsOp::permute_rows(perm)};
        QsOpSpec both = s1;
        both.insert(both.end(), s2.begin(), s2.end());
        CHECK(apply_qs_ops(apply_qs_ops(m, s1), s2) == apply_qs_ops(m, both));
    }
}

TEST_CASE("matrix text round-trips bit exactly") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8, trial % 2 == 0);
        std::ostringstream os;
        write_matrix_text(os, m);
        std::istringstream is(os.str());
        auto back = read_bitmatrix_text(is);
        CHECK(back == m);
        std::ostringstream os2;
        write_matrix_text(os2, back);
        CHECK(os.str() == os2.str());
    }
}

TEST_CASE("partial matrix text keeps stars") {
    PartialMatrix p(2, 3);
    p.set(0, 0, Cell::One);
    p.set(1, 2, Cell::Zero);
    std::ostringstream os;
    write_matrix_text(os, p);
    CHECK(os.str() == "2 3\n1**\n**0\n");
    std::istringstream is(os.str());
    CHECK(read_partial_matrix_text(is) == p);
    std::istringstream is2(os.str());
    CHECK_THROWS_AS(read_bitmatrix_text(is2), domain_error);
}

TEST_CASE("labelled partial matrices round-trip bit exactly") {
    const auto gadget = gen_ehd2_gadget();
    std::ostringstream os;
    write_matrix_text(os, gadget);
    std::istringstream is(os.str());
    const auto back = read_partial_matrix_text(is);
    CHECK(back == gadget);
    std::ostringstream os2;
    write_matrix_text(os2, back);
    CHECK(os.str() == os2.str());
}

TEST_SUITE_END();
