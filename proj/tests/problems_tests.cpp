#include "doctest.h"
#include "qslab/domino.hpp"
#include "qslab/problems.hpp"

using namespace qslab;

namespace {

std::size_t label_row(const BitMatrix& m, const std::string& label) {
    const Bits want = Bits::from_string(label);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.labels.rows[r] == want) return r;
    }
    FAIL("row label not found: ", label);
    return 0;
}

std::size_t label_col(const BitMatrix& m, const std::string& label) {
    const Bits want = Bits::from_string(label);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m.labels.cols[c] == want) return c;
    }
    FAIL("column label not found: ", label);
    return 0;
}

bool entry(const BitMatrix& m, const std::string& x, const std::string& y) {
    return m.get(label_row(m, x), label_col(m, y));
}

}  // namespace

TEST_SUITE_BEGIN("problems");

TEST_CASE("equality matrices") {
    auto m1 = gen_equality(1);
    CHECK(m1.rows() == 2);
    CHECK(m1.get(0, 0));
    CHECK(m1.get(1, 1));
    CHECK_FALSE(m1.get(0, 1));
    CHECK_FALSE(m1.get(1, 0));

    auto m2 = gen_equality(2);
    CHECK(entry(m2, "01", "01"));
    CHECK_FALSE(entry(m2, "01", "10"));

    CHECK_THROWS_AS(gen_equality(0), domain_error);
    CHECK_THROWS_AS(gen_equality(15), domain_error);
}

TEST_CASE("greater-than matrices") {
    auto m = gen_gt(2);
    CHECK(m.get(0, 0));
    CHECK(m.get(0, 1));
    CHECK_FALSE(m.get(1, 0));
    CHECK(m.get(1, 1));

    auto m8 = gen_gt(8);
    CHECK(m8.get(3, 5));       // 3 <= 5
    CHECK_FALSE(m8.get(7, 2)); // 7 > 2
}

TEST_CASE("hamming distance matrices") {
    auto e21 = gen_ehd(2, 1);
    CHECK(entry(e21, "00", "01"));
    CHECK_FALSE(entry(e21, "00", "00"));

    auto e72 = gen_ehd(7, 2);
    CHECK(entry(e72, "0011000", "1010000"));
    CHECK_FALSE(entry(e72, "0011000", "0000011"));

    auto t31 = gen_thd(3, 1);
    CHECK_FALSE(entry(t31, "000", "011"));
    CHECK(entry(t31, "000", "010"));
    CHECK(entry(t31, "000", "000"));

    CHECK_THROWS_AS(gen_ehd(3, 4), domain_error);
}

TEST_CASE("threshold equals the union of exact distances") {
    for (int n = 1; n <= 8; ++n) {
        for (int k = 0; k <= n; ++k) {
            auto thd = gen_thd(n, k);
            BitMatrix built(thd.rows(), thd.cols());
            for (int t = 0; t <= k; ++t) {
                auto e = gen_ehd(n, t);
                for (std::size_t r = 0; r < e.rows(); ++r) {
                    for (std::size_t c = 0; c < e.cols(); ++c) {
                        if (e.get(r, c)) built.set(r, c, true);
                    }
                }
            }
            built.labels = thd.labels;
            CHECK(built == thd);
        }
    }
}

TEST_CASE("exact-distance matrices are symmetric, greater-than is not") {
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) {
            auto m = gen_ehd(n, k);
            bool symmetric = true;
            for (std::size_t r = 0; r < m.rows() && symmetric; ++r) {
                for (std::size_t c = 0; c < m.cols() && symmetric; ++c) {
                    symmetric = m.get(r, c) == m.get(c, r);
                }
            }
            CHECK(symmetric);
        }
    }
    for (int t = 2; t <= 6; ++t) {
        auto m = gen_gt(t);
        CHECK(m.get(0, 1) != m.get(1, 0));
    }
}

TEST_CASE("integer inner product matrices") {
    CHECK(iip_side_length(2, 2) == 25);
    CHECK_THROWS_AS(gen_iip(3, 5), domain_error);

    auto m1 = gen_iip(1, 2);
    CHECK_FALSE(m1.get(iip_index(1, 2, {0}), iip_index(1, 2, {1})));

    auto m2 = gen_iip(2, 2);
    CHECK_FALSE(m2.get(iip_index(2, 2, {1, 1}), iip_index(2, 2, {1, -1})));
    CHECK(m2.get(iip_index(2, 2, {1, 0}), iip_index(2, 2, {1, 0})));

    // round trip of the index mapping
    for (std::size_t i = 0; i < m2.rows(); ++i) {
        CHECK(iip_index(2, 2, iip_vector(2, 2, i)) == i);
    }
}

TEST_CASE("shattered construction has the stated distances") {
    for (int k = 1; k <= 5; ++k) {
        auto built = gen_shattered_two_tally(k);
        CHECK(built.n == 2 * k + 1);
        CHECK(built.matrix.rows() == (std::size_t{1} << k));
        CHECK(built.matrix.cols() == static_cast<std::size_t>(k));
        CHECK(built.matrix.total());
        for (std::size_t s = 0; s < built.matrix.rows(); ++s) {
            for (int i = 0; i < k; ++i) {
                const bool member = (s >> i) & 1u;
                CHECK(built.matrix.get(s, i) == (member ? Cell::One : Cell::Zero));
                const std::size_t dist = hamming(built.matrix.labels.rows[s], built.matrix.labels.cols[i]);
                CHECK(dist == static_cast<std::size_t>(member ? k - 1 : k + 1));
            }
        }
    }
    auto k1 = gen_shattered_two_tally(1);
    CHECK(k1.matrix.get(0, 0) == Cell::Zero);
    CHECK(k1.matrix.get(1, 0) == Cell::One);
}

TEST_CASE("shattered construction has the stated domino counts") {
    for (int k = 2; k <= 4; ++k) {
        auto built = gen_shattered_two_tally(k);
        const int n = built.n;
        for (std::size_t s = 0; s < built.matrix.rows(); ++s) {
            for (int i = 0; i < k; ++i) {
                const auto tally = delta_type(built.matrix.labels.rows[s], built.matrix.labels.cols[i],
                                              DominoSet::none())
                                       .tally;
                if ((s >> i) & 1u) {
                    // member: one 11, k-1 of 10, rest 00
                    CHECK(tally[Domino::D11] == 1);
                    CHECK(tally[Domino::D10] == k - 1);
                    CHECK(tally[Domino::D01] == 0);
                    CHECK(tally[Domino::D00] == n - k);
                } else {
                    // non-member: one 01, k of 10, rest 00
                    CHECK(tally[Domino::D11] == 0);
                    CHECK(tally[Domino::D10] == k);
                    CHECK(tally[Domino::D01] == 1);
                    CHECK(tally[Domino::D00] == n - k - 1);
                }
            }
        }
    }
}

TEST_CASE("gadget matches the fixed strings and distance rule") {
    auto g = gen_ehd2_gadget();
    REQUIRE(g.has_labels());
    CHECK(g.labels.dim == 7);

    auto row = [&](const std::string& s) {
        for (std::size_t r = 0; r < g.rows(); ++r) {
            if (g.labels.rows[r] == Bits::from_string(s)) return r;
        }
        FAIL("missing row ", s);
        return std::size_t{0};
    };
    auto col = [&](const std::string& s) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (g.labels.cols[c] == Bits::from_string(s)) return c;
        }
        FAIL("missing column ", s);
        return std::size_t{0};
    };

    CHECK(g.get(row("1100000"), col("0000011")) == Cell::Zero);
    CHECK(g.get(row("0011000"), col("1010000")) == Cell::One);

    // the 1-rectangle and 0-rectangle on the anchor rows
    for (const char* x : {"0011000", "1100000"}) {
        for (const char* y : {"1010000", "1001000", "0101000"}) CHECK(g.get(row(x), col(y)) == Cell::One);
        for (const char* y : {"0000011", "0000101", "0000110"}) CHECK(g.get(row(x), col(y)) == Cell::Zero);
    }

    // every string has weight 2 and every non-* entry follows the distance rule
    for (const Bits& l : g.labels.rows) CHECK(l.count() == 2);
    for (const Bits& l : g.labels.cols) CHECK(l.count() == 2);
    auto completed = complete_by_distance(g, 2);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const std::size_t dist = hamming(g.labels.rows[r], g.labels.cols[c]);
            const Cell v = g.get(r, c);
            if (v != Cell::Star) {
                CHECK(dist == (v == Cell::One ? 2u : 4u));
                CHECK(completed.get(r, c) == (v == Cell::One));
            }
            CHECK(completed.get(r, c) == (dist == 2));
        }
    }

    // pairwise distinct rows and columns, as vectors
    for (std::size_t a = 0; a < g.rows(); ++a) {
        for (std::size_t b = a + 1; b < g.rows(); ++b) {
            bool equal = true;
            for (std::size_t c = 0; c < g.cols() && equal; ++c) equal = g.get(a, c) == g.get(b, c);
            CHECK_FALSE(equal);
        }
    }
    for (std::size_t a = 0; a < g.cols(); ++a) {
        for (std::size_t b = a + 1; b < g.cols(); ++b) {
            bool equal = true;
            for (std::size_t r = 0; r < g.rows() && equal; ++r) equal = g.get(r, a) == g.get(r, b);
            CHECK_FALSE(equal);
        }
    }
}

TEST_CASE("gadget entries agree with the 7-bit 2-distance matrix") {
    auto g = gen_ehd2_gadget();
    auto e = gen_ehd(7, 2);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const Cell v = g.get(r, c);
            if (v == Cell::Star) continue;
            CHECK(entry(e, g.labels.rows[r].to_string(), g.labels.cols[c].to_string()) == (v == Cell::One));
        }
    }
}

TEST_SUITE_END();
