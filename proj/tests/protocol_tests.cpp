#include <random>

#include "doctest.h"
#include "qslab/problems.hpp"
#include "qslab/protocol/protocols.hpp"

using namespace qslab;

namespace {

int gt_query_cap(std::uint64_t n) {
    return detail::ceil_log2(static_cast<std::uint64_t>(detail::ceil_log2(n))) + 2;
}

// Distinct strings within the stated radius of a random center.
std::vector<Bits> low_diameter_set(std::mt19937_64& rng, std::size_t count, std::size_t dim, std::size_t radius) {
    const Bits center = random_bits(rng, dim);
    std::vector<Bits> out = {center};
    std::unordered_set<Bits, BitsHash> seen = {center};
    while (out.size() < count) {
        Bits v = center;
        const std::size_t flips = rng() % (radius / 2 + 1);
        for (std::size_t f = 0; f < flips; ++f) {
            const std::size_t p = rng() % dim;
            v.set(p, !v.get(p));
        }
        if (seen.insert(v).second) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("protocol");

TEST_CASE("greater-than answers and worst-case counts") {
    CHECK(eq_gt_protocol(8, 3, 5).result == 1);
    CHECK(eq_gt_protocol(8, 7, 2).result == 0);
    CHECK(eq_gt_protocol(1, 1, 1).result == 1);

    for (std::uint64_t n : {2, 3, 7, 16, 33, 128}) {
        int worst = 0;
        for (std::uint64_t i = 1; i <= n; ++i) {
            for (std::uint64_t j = 1; j <= n; ++j) {
                auto run = eq_gt_protocol(n, i, j);
                CHECK(run.result == (i <= j ? 1 : 0));
                worst = std::max(worst, run.transcript.total());
            }
        }
        CHECK(worst <= gt_query_cap(n));
    }

    int worst256 = 0;
    for (std::uint64_t i = 1; i <= 256; ++i) {
        for (std::uint64_t j = 1; j <= 256; ++j) worst256 = std::max(worst256, eq_gt_protocol(256, i, j).transcript.total());
    }
    CHECK(worst256 <= 5);
}

TEST_CASE("naive threshold distance follows the distance rule") {
    const Bits x = Bits::from_string("00000001");
    const Bits y = Bits::from_string("00000000");
    auto same = naive_thd_protocol(y, y, 2);
    CHECK(same.distance == 0);
    CHECK(same.transcript.total() == 1);
    CHECK(naive_thd_protocol(x, y, 1).distance == 1);

    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = 1 + rng() % 24;
        Bits a = random_bits(rng, dim), b = random_bits(rng, dim);
        const int k = static_cast<int>(rng() % 5);
        auto run = naive_thd_protocol(a, b, k);
        const std::size_t dist = hamming(a, b);
        if (dist <= static_cast<std::size_t>(k)) {
            CHECK(run.distance == static_cast<int>(dist));
        } else {
            CHECK_FALSE(run.distance.has_value());
        }
    }
    // dist 3 with threshold 2 comes out over threshold
    CHECK_FALSE(naive_thd_protocol(Bits::from_string("11100000"), Bits::from_string("00000000"), 2)
                    .distance.has_value());
}

TEST_CASE("partition examples") {
    auto tiny = diameter_partition({Bits::from_string("000"), Bits::from_string("001"), Bits::from_string("011")},
                                   0, 16);
    CHECK(tiny.tries_used >= 1);
    CHECK(tiny.a.size() + tiny.b.size() == 3);

    std::mt19937_64 rng(0);
    auto big = random_string_set(rng, 128, 512);
    auto part = diameter_partition(big, 0, 16);
    CHECK(part.tries_used <= 16);
    Bits mask(512);
    for (int p : part.a) mask.set(p, true);
    CHECK(partition_valid(big, mask, 3.0 * std::log2(128.0)));

    // two strings differing everywhere: both properties hold vacuously
    Bits zeroes(16), ones(16);
    for (int i = 0; i < 16; ++i) ones.set(i, true);
    auto anti = diameter_partition({zeroes, ones}, 1, 16);
    CHECK(anti.tries_used >= 1);

    CHECK_THROWS_AS(diameter_partition({zeroes}, 0, 4), domain_error);
}

TEST_CASE("bounded diameter protocol matches the distance rule") {
    const std::vector<Bits> z = {Bits::from_string("0000"), Bits::from_string("0011"), Bits::from_string("0101")};
    CHECK(bounded_diameter_threshold(z, z[1], z[1], 3).distance == 0);
    CHECK(bounded_diameter_threshold(z, z[1], z[2], 2).distance == 2);
    CHECK_FALSE(bounded_diameter_threshold(z, z[1], z[2], 1).distance.has_value());
    CHECK_THROWS_AS(bounded_diameter_threshold(z, Bits::from_string("1111"), z[0], 1), domain_error);

    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t count = 4 + rng() % 12;
        auto set = low_diameter_set(rng, count, 64, 3 * detail::ceil_log2(count) + 2);
        // keep only sets that actually satisfy the stated promise
        bool promise = true;
        const double threshold = 3.0 * std::log2(static_cast<double>(set.size()));
        for (std::size_t i = 0; i < set.size() && promise; ++i) {
            for (std::size_t j = i + 1; j < set.size() && promise; ++j) {
                promise = static_cast<double>(hamming(set[i], set[j])) <= threshold;
            }
        }
        if (!promise) continue;
        for (int k = 0; k <= 4; ++k) {
            for (std::size_t i = 0; i < set.size(); ++i) {
                for (std::size_t j = 0; j < set.size(); ++j) {
                    auto run = bounded_diameter_threshold(set, set[i], set[j], k);
                    const std::size_t dist = hamming(set[i], set[j]);
                    if (dist <= static_cast<std::size_t>(k)) {
                        CHECK(run.distance == static_cast<int>(dist));
                    } else {
                        CHECK_FALSE(run.distance.has_value());
                    }
                }
            }
        }
    }
}

TEST_CASE("bounded diameter stays correct beyond the promised diameter") {
    // recursion can hand the subroutine an agreement class whose diameter
    // exceeds 3*log2 of the class size; the halving start must absorb that
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 24 + rng() % 40;
        const std::size_t spread = 8 + rng() % 12;  // far beyond 3*log2(count)
        const Bits center = random_bits(rng, dim);
        std::vector<Bits> z = {center};
        while (z.size() < 2 + rng() % 4) {
            Bits v = center;
            const std::size_t flips = 1 + rng() % spread;
            for (std::size_t f = 0; f < flips; ++f) {
                const std::size_t p = rng() % dim;
                v.set(p, !v.get(p));
            }
            z.push_back(v);
        }
        z = detail::sorted_unique(z);
        for (int k = 0; k <= 3; ++k) {
            for (const Bits& x : z) {
                for (const Bits& y : z) {
                    CountingEqPort port;
                    const auto out = bounded_diameter_run(z, x, y, k, port);
                    const std::size_t dist = hamming(x, y);
                    if (dist <= static_cast<std::size_t>(k)) {
                        CHECK(out == static_cast<int>(dist));
                    } else {
                        CHECK_FALSE(out.has_value());
                    }
                }
            }
        }
    }
}

TEST_CASE("threshold distance on the full cube and the gadget strings") {
    std::vector<Bits> cube;
    for (std::size_t v = 0; v < 8; ++v) cube.push_back(Bits::of_integer(v, 3));
    auto run = threshold_distance(cube, cube, Bits::from_string("010"), Bits::from_string("011"), 2);
    CHECK(run.distance == 1);

    const auto gadget = gen_ehd2_gadget();
    const std::vector<Bits> xs = {Bits::from_string("0011000"), Bits::from_string("1100000")};
    const std::vector<Bits> ys = {Bits::from_string("0000011"), Bits::from_string("0000101"),
                                  Bits::from_string("0000110"), Bits::from_string("1010000"),
                                  Bits::from_string("1001000"), Bits::from_string("0101000")};
    CHECK(threshold_distance(xs, ys, xs[0], Bits::from_string("1010000"), 2).distance == 2);
    CHECK_FALSE(threshold_distance(xs, ys, xs[0], Bits::from_string("0000011"), 2).distance.has_value());
}

TEST_CASE("threshold distance equals the distance rule exhaustively on small sets") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 4 + rng() % 12;
        const std::size_t count = 2 + rng() % 10;
        std::vector<Bits> xs = random_string_set(rng, count, dim);
        std::vector<Bits> ys = trial % 3 == 0 ? xs : random_string_set(rng, count, dim);
        for (int k = 0; k <= 3; ++k) {
            for (const Bits& x : xs) {
                for (const Bits& y : ys) {
                    ThresholdOptions opt;
                    opt.seed = trial;
                    auto run = threshold_distance(xs, ys, x, y, k, opt);
                    const std::size_t dist = hamming(x, y);
                    if (dist <= static_cast<std::size_t>(k)) {
                        CHECK(run.distance == static_cast<int>(dist));
                    } else {
                        CHECK_FALSE(run.distance.has_value());
                    }
                }
            }
        }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(eq_gt_protocol(8, 0, 3), domain_error);
    CHECK_THROWS_AS(eq_gt_protocol(8, 1, 9), domain_error);
    const std::vector<Bits> xs = {Bits::from_string("00"), Bits::from_string("01")};
    CHECK_THROWS_AS(threshold_distance(xs, xs, Bits::from_string("11"), xs[0], 1), domain_error);
    CHECK_THROWS_AS(threshold_distance(xs, xs, xs[0], xs[1], -1), domain_error);
}

TEST_CASE("partitions are deterministic per seed") {
    std::mt19937_64 rng(223);
    const auto z = random_string_set(rng, 24, 96);
    const auto p1 = diameter_partition(z, 11, 16);
    const auto p2 = diameter_partition(z, 11, 16);
    CHECK(p1.a == p2.a);
    CHECK(p1.b == p2.b);
    CHECK(p1.tries_used == p2.tries_used);
}

TEST_CASE("runs are deterministic for a fixed seed") {
    std::mt19937_64 rng(97);
    auto xs = random_string_set(rng, 16, 48);
    auto ys = random_string_set(rng, 16, 48);
    ThresholdOptions opt;
    opt.seed = 12345;
    auto first = threshold_distance(xs, ys, xs[3], ys[7], 3, opt);
    auto second = threshold_distance(xs, ys, xs[3], ys[7], 3, opt);
    CHECK(first.distance == second.distance);
    REQUIRE(first.transcript.total() == second.transcript.total());
    for (int e = 0; e < first.transcript.total(); ++e) {
        CHECK(first.transcript.entries[e].answer == second.transcript.entries[e].answer);
        CHECK(first.transcript.entries[e].alice_digest == second.transcript.entries[e].alice_digest);
    }
}

TEST_CASE("each party's queries are a function of its own view") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 8 + rng() % 24;
        auto xs = random_string_set(rng, 8, dim);
        auto ys = trial % 2 ? xs : random_string_set(rng, 8, dim);
        const Bits x = xs[rng() % xs.size()];
        Bits y = ys[rng() % ys.size()];
        if (trial % 5 == 0) y = x;
        if (trial % 5 == 2) {
            // a close pair drives the run into the bounded-diameter branch
            y = x;
            for (int f = 0; f < 1 + trial % 3; ++f) {
                const std::size_t p = rng() % dim;
                y.set(p, !y.get(p));
            }
            ys.push_back(y);
        }

        Transcript live;
        std::optional<int> live_out;
        {
            LiveEqPort port(live);
            SeedStream seeds(7);
            live_out = threshold_distance_run(xs, ys, x, y, 2, port, seeds, 64);
        }
        // alice-only replay: y is never touched
        {
            ReplayEqPort port(live);
            SeedStream seeds(7);
            auto out = threshold_distance_run(xs, ys, x, std::nullopt, 2, port, seeds, 64);
            CHECK(out == live_out);
            CHECK(port.exhausted());
        }
        // bob-only replay: x is never touched
        {
            ReplayEqPort port(live);
            SeedStream seeds(7);
            auto out = threshold_distance_run(xs, ys, std::nullopt, y, 2, port, seeds, 64);
            CHECK(out == live_out);
            CHECK(port.exhausted());
        }
    }
}

TEST_CASE("threshold distance queries stay flat as the dimension grows") {
    std::mt19937_64 rng(103);
    auto grow = [&](std::size_t dim) {
        auto zs = random_string_set(rng, 32, dim);
        // plant a pair at distance 2
        Bits mate = zs[0];
        mate.set(0, !mate.get(0));
        mate.set(dim - 1, !mate.get(dim - 1));
        zs.push_back(mate);
        int worst = 0;
        ThresholdOptions opt;
        opt.seed = 5;
        worst = std::max(worst, threshold_distance(zs, zs, zs[0], mate, 2, opt).transcript.total());
        worst = std::max(worst, threshold_distance(zs, zs, zs[1], zs[2], 2, opt).transcript.total());
        return worst;
    };
    const int at64 = grow(64);
    const int at4096 = grow(4096);
    // the naive protocol pays for the dimension; this one does not
    CHECK(at4096 <= at64 + 2);
    Bits a = random_bits(rng, 4096), b = a;
    b.set(17, !b.get(17));
    b.set(1000, !b.get(1000));
    Bits a64 = random_bits(rng, 64), b64 = a64;
    b64.set(17, !b64.get(17));
    b64.set(44, !b64.get(44));
    CHECK(naive_thd_protocol(a, b, 2).transcript.total() > naive_thd_protocol(a64, b64, 2).transcript.total());
}

TEST_SUITE_END();
