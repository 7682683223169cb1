#pragma once

// The acceptance suite: every release-gating check of this lab, each printed
// as one pass/fail line. Expected values that key on fixed constructions are
// frozen here; tolerances and budgets are pinned constants, not knobs.

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qslab/domino.hpp"
#include "qslab/pattern.hpp"
#include "qslab/problems.hpp"
#include "qslab/protocol/protocols.hpp"
#include "qslab/protocol/tree.hpp"
#include "qslab/ramsey.hpp"
#include "qslab/reduction.hpp"
#include "qslab/structure.hpp"

namespace qslab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Measured worst-case of the full threshold protocol divided by
// (k+1)*log2(log2 N) stays near 3; the gate is 8.
inline constexpr double kScalingConstant = 8.0;
inline constexpr double kCorrectnessTimeBudgetSeconds = 120.0;
inline constexpr int kPartitionTries = 16;
inline constexpr std::uint64_t kPatternBudget = 400'000'000;

namespace detail_acc {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

inline int gt_query_cap(std::uint64_t n) {
    return qslab::detail::ceil_log2(static_cast<std::uint64_t>(qslab::detail::ceil_log2(n))) + 2;
}

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

// One protocol-correctness trial against the popcount rule.
inline void run_distance_trial(Check& check, const std::vector<Bits>& xs, const std::vector<Bits>& ys,
                               const Bits& x, const Bits& y, int k, std::uint64_t seed) {
    CountingEqPort port;
    SeedStream seeds(seed);
    const auto out = threshold_distance_run(xs, ys, x, y, k, port, seeds, 64);
    const std::size_t dist = hamming(x, y);
    if (dist <= static_cast<std::size_t>(k)) {
        check.expect(out.has_value() && *out == static_cast<int>(dist),
                     "distance " + std::to_string(dist) + " at k=" + std::to_string(k) + " misreported");
    } else {
        check.expect(!out.has_value(),
                     "distance " + std::to_string(dist) + " at k=" + std::to_string(k) + " not flagged as over");
    }
}

inline Bits flip_some(std::mt19937_64& rng, Bits v, int flips) {
    std::vector<std::size_t> used;
    while (static_cast<int>(used.size()) < flips) {
        const std::size_t p = rng() % v.size();
        bool dup = false;
        for (std::size_t u : used) dup = dup || u == p;
        if (dup) continue;
        used.push_back(p);
        v.set(p, !v.get(p));
    }
    return v;
}

// Worst query count of the full protocol over a planted trial plan.
inline int planted_worst(std::size_t n, std::size_t d, int k, std::uint64_t seed, int planted, int random_pairs,
                         Check& check) {
    std::mt19937_64 rng(seed);
    auto z = random_string_set(rng, n, d);
    std::vector<std::pair<Bits, Bits>> tests;
    for (int p = 0; p < planted; ++p) {
        const Bits base = z[rng() % z.size()];
        const Bits mate = flip_some(rng, base, static_cast<int>(rng() % (2 * k + 2)));
        z.push_back(mate);
        tests.push_back({base, mate});
    }
    for (int p = 0; p < random_pairs; ++p) tests.push_back({z[rng() % n], z[rng() % n]});
    z = qslab::detail::sorted_unique(z);
    int worst = 0;
    for (const auto& [x, y] : tests) {
        CountingEqPort port;
        SeedStream seeds(seed ^ 0xace5eedull);
        const auto out = threshold_distance_run(z, z, x, y, k, port, seeds, 64);
        const std::size_t dist = hamming(x, y);
        check.expect(out.has_value() == (dist <= static_cast<std::size_t>(k)),
                     "scaling trial misreported a distance");
        if (out) check.expect(*out == static_cast<int>(dist), "scaling trial returned a wrong distance");
        worst = std::max(worst, port.count());
    }
    return worst;
}

}  // namespace detail_acc

// 1. Full protocol equals the distance rule, exhaustively on small instances
//    and on 10^4 random planted trials across dimensions, within two minutes.
inline CriterionResult criterion_protocol_correctness() {
    using namespace detail_acc;
    const auto start = Clock::now();
    Check check;
    long long runs = 0;

    // exhaustive part: |X u Y| <= 32, d <= 16, k <= 3
    for (const std::size_t d : {std::size_t{8}, std::size_t{16}}) {
        std::vector<std::pair<std::vector<Bits>, std::vector<Bits>>> instances;
        std::mt19937_64 rng(d);
        {
            auto z = random_string_set(rng, 16, d);
            instances.push_back({z, z});
        }
        {
            // ball: a center plus every single-coordinate offset
            const Bits center = random_bits(rng, d);
            std::vector<Bits> ball = {center};
            for (std::size_t p = 0; p < d; ++p) {
                Bits v = center;
                v.set(p, !v.get(p));
                ball.push_back(v);
            }
            instances.push_back({ball, ball});
        }
        {
            // planted near pairs across the two sides
            auto xs = random_string_set(rng, 8, d);
            std::vector<Bits> ys;
            for (const Bits& x : xs) ys.push_back(flip_some(rng, x, 1 + rng() % 4));
            instances.push_back({xs, ys});
        }
        {
            // two clusters around antipodal centers
            Bits zero(d), one(d);
            for (std::size_t p = 0; p < d; ++p) one.set(p, true);
            std::vector<Bits> both;
            for (int i = 0; i < 8; ++i) both.push_back(flip_some(rng, zero, 1 + rng() % 2));
            for (int i = 0; i < 8; ++i) both.push_back(flip_some(rng, one, 1 + rng() % 2));
            both = qslab::detail::sorted_unique(both);
            instances.push_back({both, both});
        }
        for (const auto& [xs, ys] : instances) {
            for (int k = 0; k <= 3; ++k) {
                for (const Bits& x : xs) {
                    for (const Bits& y : ys) {
                        run_distance_trial(check, xs, ys, x, y, k, d * 31 + k);
                        ++runs;
                    }
                }
            }
        }
    }

    // random part: 10^4 trials, |X| = |Y| = 64, d in {64, 256, 1024}, 20 seeds
    const std::size_t dims[] = {64, 256, 1024};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const std::size_t d : dims) {
            std::mt19937_64 rng(mix_seed(seed, d));
            auto xs = random_string_set(rng, 64, d);
            const auto ys_base = random_string_set(rng, 63, d);
            for (int trial = 0; trial < 167; ++trial) {
                const int k = static_cast<int>(rng() % 5);
                const Bits& x = xs[rng() % xs.size()];
                // one planted near string keeps both branches of the rule hot
                const Bits planted = flip_some(rng, x, static_cast<int>(rng() % (k + 2)));
                std::vector<Bits> ys = ys_base;
                ys.push_back(planted);
                const Bits y = rng() % 2 ? planted : ys[rng() % 63];
                run_distance_trial(check, xs, ys, x, y, k, mix_seed(seed, trial));
                ++runs;
            }
        }
    }

    const double elapsed = seconds_since(start);
    check.expect(elapsed < kCorrectnessTimeBudgetSeconds, "runtime exceeded two minutes");
    std::ostringstream detail;
    detail << runs << " runs, zero mismatches required; " << elapsed << "s";
    if (!check.ok) detail << "; first failure: " << check.first_failure;
    return {1, "threshold protocol equals the distance rule", check.ok, detail.str()};
}

// 2. Query scaling: the greater-than protocol meets its ceil(log2 ceil(log2 N))+2
//    cap for every N <= 512 exhaustively; the full protocol's worst counts over
//    planted instances stay below the documented constant times
//    (k+1)*log2(log2 N); and growing the dimension 64x moves the naive
//    protocol's counts but not the full protocol's.
inline CriterionResult criterion_query_scaling() {
    using namespace detail_acc;
    Check check;
    std::ostringstream detail;

    // greater-than protocol: the run depends on the numeral width only, so
    // exhausting each width covers every N; the cap is still applied per N.
    {
        const std::uint64_t max_n = 512;
        std::vector<std::vector<int>> counts_by_width;
        for (int width = 0; (std::uint64_t{1} << width) <= max_n || width == 0; ++width) {
            const std::uint64_t side = std::uint64_t{1} << width;
            std::vector<int> counts(side * side, 0);
            for (std::uint64_t i = 1; i <= side; ++i) {
                for (std::uint64_t j = 1; j <= side; ++j) {
                    CountingEqPort port;
                    const int result = eq_gt_run(side, i, j, port);
                    check.expect(result == (i <= j ? 1 : 0), "greater-than protocol answered wrongly");
                    counts[(i - 1) * side + (j - 1)] = port.count();
                }
            }
            counts_by_width.push_back(std::move(counts));
            if (side >= max_n) break;
        }
        int worst_any = 0;
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            const int width = qslab::detail::ceil_log2(n);
            const std::uint64_t side = std::uint64_t{1} << width;
            const auto& counts = counts_by_width[width];
            int worst = 0;
            for (std::uint64_t i = 1; i <= n; ++i) {
                for (std::uint64_t j = 1; j <= n; ++j) {
                    worst = std::max(worst, counts[(i - 1) * side + (j - 1)]);
                }
            }
            check.expect(worst <= gt_query_cap(n),
                         "greater-than worst case exceeded its cap at N=" + std::to_string(n));
            worst_any = std::max(worst_any, worst);
        }
        detail << "gt worst=" << worst_any << " (cap at 512: " << gt_query_cap(512) << ")";
    }

    // full protocol: bounded ratio across four sizes, growth below log2 N
    const int k = 2;
    double worst_ratio = 0;
    int first_worst = 0, last_worst = 0;
    for (const std::size_t n : {std::size_t{64}, std::size_t{256}, std::size_t{1024}, std::size_t{4096}}) {
        int worst = 0;
        const int seeds = n >= 4096 ? 2 : 3;
        for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(seeds); ++s) {
            worst = std::max(worst, planted_worst(n, 4 * n, k, s, 12, 6, check));
        }
        const double ratio = worst / ((k + 1) * std::log2(std::log2(static_cast<double>(n))));
        worst_ratio = std::max(worst_ratio, ratio);
        check.expect(ratio <= kScalingConstant,
                     "scaling ratio " + std::to_string(ratio) + " exceeded the documented constant at N=" +
                         std::to_string(n));
        if (n == 64) first_worst = worst;
        if (n == 4096) last_worst = worst;
    }
    check.expect(static_cast<double>(last_worst) / first_worst < 12.0 / 6.0,
                 "worst counts grew as fast as log2 N");
    detail << "; td worst ratio=" << worst_ratio << " <= " << kScalingConstant;

    // dimension contrast at fixed set size
    {
        int td_small = 0, td_large = 0;
        for (std::uint64_t s = 1; s <= 3; ++s) {
            td_small = std::max(td_small, planted_worst(64, 64, k, s, 12, 6, check));
            td_large = std::max(td_large, planted_worst(64, 4096, k, s, 12, 6, check));
        }
        std::mt19937_64 rng(17);
        int naive_small = 0, naive_large = 0;
        for (int trial = 0; trial < 8; ++trial) {
            const Bits a64 = random_bits(rng, 64), a4k = random_bits(rng, 4096);
            const Bits b64 = flip_some(rng, a64, k), b4k = flip_some(rng, a4k, k);
            CountingEqPort p1, p2;
            naive_thd_run(a64, b64, 64, k, p1);
            naive_thd_run(a4k, b4k, 4096, k, p2);
            naive_small = std::max(naive_small, p1.count());
            naive_large = std::max(naive_large, p2.count());
        }
        check.expect(naive_large > naive_small, "naive protocol count did not grow with the dimension");
        check.expect(td_large <= td_small, "full protocol count grew with the dimension");
        detail << "; naive " << naive_small << "->" << naive_large << ", td " << td_small << "->" << td_large;
    }

    std::string text = detail.str();
    if (!check.ok) text += "; first failure: " + check.first_failure;
    return {2, "query counts scale with log log N, not the dimension", check.ok, text};
}

// 3. Partition search at scale: 100 random 128-string sets in 512 dimensions
//    each yield a verified partition within 16 tries.
inline CriterionResult criterion_partition() {
    using namespace detail_acc;
    Check check;
    int worst_tries = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const auto z = random_string_set(rng, 128, 512);
        try {
            const Partition part = diameter_partition(z, seed, kPartitionTries);
            worst_tries = std::max(worst_tries, part.tries_used);
            // independent per-coordinate re-check of both properties
            const double threshold = 3.0 * std::log2(128.0);
            for (std::size_t i = 0; i < z.size() && check.ok; ++i) {
                for (std::size_t j = i + 1; j < z.size() && check.ok; ++j) {
                    std::size_t diff_a = 0, diff_b = 0;
                    for (const int p : part.a) diff_a += z[i].get(p) != z[j].get(p);
                    for (const int p : part.b) diff_b += z[i].get(p) != z[j].get(p);
                    if (diff_a == 0) check.expect(diff_b <= threshold, "left-agreeing pair too far right");
                    if (diff_b == 0) check.expect(diff_a <= threshold, "right-agreeing pair too far left");
                }
            }
        } catch (const budget_error&) {
            check.expect(false, "no partition within 16 tries at seed " + std::to_string(seed));
        }
    }
    return {3, "random partitions verify within 16 tries", check.ok,
            "100 sets, worst tries " + std::to_string(worst_tries) +
                (check.ok ? "" : "; first failure: " + check.first_failure)};
}

// 4. Structural numbers of the named constructions.
inline CriterionResult criterion_structural_numbers() {
    using namespace detail_acc;
    Check check;
    check.expect(vc_dimension(gen_equality(4), 3) == 1, "equality shattering dimension is not 1");
    check.expect(vc_dimension(gen_ehd(7, 1), 4) == 3, "1-distance shattering dimension is not 3");
    for (int k = 1; k <= 4; ++k) {
        check.expect(vc_dimension(to_bitmatrix(gen_shattered_two_tally(k).matrix), k + 1) == k,
                     "shattered construction at k=" + std::to_string(k) + " missed its dimension");
    }
    for (int t = 1; t <= 6; ++t) {
        check.expect(max_gt_size(gen_gt(t), std::min(t + 1, 8)).max_gt == t,
                     "chain size of the order matrix is wrong at t=" + std::to_string(t));
    }
    check.expect(max_gt_size(gen_iip(2, 2), 4).max_gt <= 3, "inner-product chain bound exceeded");
    return {4, "shattering and chain sizes match the known values", check.ok,
            check.ok ? "equality=1, 1-distance=3, shattered(k)=k, order(t)=t, inner-product<=3"
                     : check.first_failure};
}

// 5. The 7-bit gadget: two-tally verification, agreement with the 2-distance
//    matrix, a distinct-row 2x3 all-ones block inside its completion, and no
//    such block in any 1-distance matrix up to dimension 12.
inline CriterionResult criterion_gadget() {
    using namespace detail_acc;
    Check check;
    const auto gadget = gen_ehd2_gadget();
    check.expect(verify_two_tally(gadget, 2).ok(), "gadget failed two-tally verification");

    const auto wide = gen_ehd(7, 2);
    const auto row_of = label_index_map(wide.labels.rows);
    const auto col_of = label_index_map(wide.labels.cols);
    for (std::size_t r = 0; r < gadget.rows(); ++r) {
        for (std::size_t c = 0; c < gadget.cols(); ++c) {
            const Cell v = gadget.get(r, c);
            if (v == Cell::Star) continue;
            const bool want = wide.get(row_of.at(gadget.labels.rows[r]), col_of.at(gadget.labels.cols[c]));
            check.expect((v == Cell::One) == want, "gadget entry disagrees with the 2-distance matrix");
        }
    }

    PartialMatrix block(2, 3, Cell::One);
    PatternSearchOptions opt;
    opt.require_distinct = true;
    opt.budget = kPatternBudget;
    check.expect(contains_pattern(complete_by_distance(gadget, 2), block, opt).has_value(),
                 "completion lost its distinct 2x3 all-ones block");

    for (int n = 1; n <= 12; ++n) {
        const auto m = gen_ehd(n, 1);
        check.expect(!contains_pattern(m, block, opt).has_value(),
                     "1-distance matrix contains a distinct 2x3 block at n=" + std::to_string(n));
        // independent check: no two distinct rows share three common neighbours
        bool found = false;
        const std::size_t words = m.words_per_row();
        for (std::size_t a = 0; a < m.rows() && !found; ++a) {
            for (std::size_t b = a + 1; b < m.rows() && !found; ++b) {
                const auto wa = m.row_words(a), wb = m.row_words(b);
                std::size_t common = 0;
                for (std::size_t w = 0; w < words; ++w) common += std::popcount(wa[w] & wb[w]);
                found = common >= 3;
            }
        }
        check.expect(!found, "common-neighbour scan found a block at n=" + std::to_string(n));
    }
    return {5, "gadget verifies and the block containment facts hold", check.ok,
            check.ok ? "two-tally pass; block present in completion, absent in 1-distance up to n=12"
                     : check.first_failure};
}

// 6. Shuffle invariance of the distance matrices, and a concrete violation
//    for the numerically labelled order matrix.
inline CriterionResult criterion_shuffle_invariance() {
    using namespace detail_acc;
    Check check;
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) {
            check.expect(is_shuffle_invariant(gen_ehd(n, k), DominoSet::all()).ok(),
                         "distance matrix lost invariance at n=" + std::to_string(n));
        }
    }
    auto gt = gen_gt(4);
    gt.labels.dim = 2;
    for (std::size_t i = 0; i < 4; ++i) {
        gt.labels.rows.push_back(Bits::of_integer(i, 2));
        gt.labels.cols.push_back(Bits::of_integer(i, 2));
    }
    const auto res = is_shuffle_invariant(gt, DominoSet::all());
    check.expect(!res.ok(), "numeric order matrix passed the invariance check");
    if (res.violation) {
        const auto& v = *res.violation;
        const auto t1 = delta_type(v.x, v.y, DominoSet::none());
        const auto t2 = delta_type(v.u, v.v, DominoSet::none());
        check.expect(t1.tally == t2.tally, "reported counterexample types differ");
    }
    return {6, "distance matrices are shuffle invariant, numeric order is not", check.ok,
            check.ok ? "all n<=6 invariant; order violation exhibited" : check.first_failure};
}

// 7. Homogeneous-set mechanics: every edge two-coloring of six points has a
//    uniform triple, the pentagon coloring of five does not, and micro-scale
//    extraction returns queries with the widened invariance.
inline CriterionResult criterion_ramsey() {
    using namespace detail_acc;
    Check check;
    for (int mask = 0; mask < (1 << 15) && check.ok; ++mask) {
        int bit = 0;
        int color[6][6] = {};
        for (int i = 0; i < 6; ++i) {
            for (int j = i + 1; j < 6; ++j) color[i][j] = (mask >> bit++) & 1;
        }
        const auto coloring = SubsetColoring::from_function(6, 2, [&](const std::vector<int>& s) -> std::string {
            return s.size() == 2 ? std::to_string(color[s[0]][s[1]]) : "base";
        });
        check.expect(find_homogeneous(coloring, 3).has_value(),
                     "an edge coloring of six points had no uniform triple");
    }
    const auto pentagon = SubsetColoring::from_function(5, 2, [](const std::vector<int>& s) -> std::string {
        if (s.size() != 2) return "base";
        const int d = (s[1] - s[0] + 5) % 5;
        return (d == 1 || d == 4) ? "ring" : "chord";
    });
    check.expect(!find_homogeneous(pentagon, 3).has_value(), "the pentagon coloring produced a uniform triple");

    for (const int wide : {6, 12}) {
        const std::size_t side = std::size_t{1} << wide;
        BitMatrix query(side, side);
        query.labels.dim = wide;
        for (std::size_t v = 0; v < side; ++v) {
            query.labels.rows.push_back(Bits::of_integer(v, wide));
            query.labels.cols.push_back(Bits::of_integer(v, wide));
        }
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                std::size_t marked = 0;
                for (int p = 0; p < wide; ++p)

                    marked += ((i >> p) | (j >> p)) & 1u;
                query.set(i, j, marked % 2 == 1);
            }
        }
        try {
            const auto out = extract_invariant_queries({query}, 2, DominoSet::none(), false);
            check.expect(out.restricted.size() == 1 &&
                             is_shuffle_invariant(out.restricted[0], DominoSet::of({Domino::D00})).ok(),
                         "restricted query missed the widened invariance");
        } catch (const std::exception& e) {
            check.expect(false, std::string("extraction failed: ") + e.what());
        }
    }
    return {7, "homogeneous-set search and query extraction behave", check.ok,
            check.ok ? "32768 colorings uniform; pentagon none; extraction invariant at widths 6 and 12"
                     : check.first_failure};
}

// 8. Reduction facts: tree flattening is pointwise faithful on random trees,
//    and the blocky closure contains the 2-cube but not the 3-cube 1-distance
//    matrix, with no single-query reduction for the latter.
inline CriterionResult criterion_reduction() {
    using namespace detail_acc;
    Check check;
    std::mt19937_64 rng(4242);
    int trees = 0;
    while (trees < 100) {
        ProtocolTree t;
        const int nq = 1 + static_cast<int>(rng() % 3);
        for (int q = 0; q < nq; ++q) {
            BitMatrix m(8, 8);
            for (std::size_t r = 0; r < 8; ++r) {
                for (std::size_t c = 0; c < 8; ++c) m.set(r, c, rng() & 1u);
            }
            t.queries.push_back(std::move(m));
        }
        auto build = [&](auto&& self, int depth) -> int {
            const int id = static_cast<int>(t.nodes.size());
            t.nodes.push_back({});
            if (depth == 3 || rng() % 3 == 0) {
                t.nodes[id].leaf_value = static_cast<int>(rng() & 1u);
                return id;
            }
            t.nodes[id].query = static_cast<int>(rng() % t.queries.size());
            const int l = self(self, depth + 1);
            const int r = self(self, depth + 1);
            t.nodes[id].left = l;
            t.nodes[id].right = r;
            return id;
        };
        build(build, 0);
        if (t.nodes[0].is_leaf()) continue;
        ++trees;
        const auto w = flatten_protocol(t);
        for (std::size_t x = 0; x < 8; ++x) {
            for (std::size_t y = 0; y < 8; ++y) {
                std::uint32_t answers = 0;
                for (std::size_t qi = 0; qi < w.queries.size(); ++qi) {
                    answers |= static_cast<std::uint32_t>(w.queries[qi].get(x, y)) << qi;
                }
                check.expect(w.f.eval(answers) == (eval_protocol(t, x, y).output == 1),
                             "flattened combiner disagreed with the walk");
            }
        }
    }

    check.expect(is_blocky(gen_ehd(2, 1)).has_value(), "2-cube 1-distance matrix is not blocky");
    check.expect(!is_blocky(gen_ehd(3, 1)).has_value(), "3-cube 1-distance matrix came out blocky");
    const auto e31 = gen_ehd(3, 1);
    check.expect(!search_reduction(e31, blocky_candidates(e31), 1).has_value(),
                 "found a single-query reduction that should not exist");
    return {8, "flattening is faithful and the blocky separation holds", check.ok,
            check.ok ? "100 trees pointwise equal; blocky at n=2, not at n=3, no c=1 witness"
                     : check.first_failure};
}

// 9. Mutation sensitivity: every single-entry change to the gadget breaks
//    two-tally verification, and every combiner bit flip breaks a witness.
inline CriterionResult criterion_mutation() {
    using namespace detail_acc;
    Check check;
    const auto gadget = gen_ehd2_gadget();
    int mutants = 0;
    for (std::size_t r = 0; r < gadget.rows(); ++r) {
        for (std::size_t c = 0; c < gadget.cols(); ++c) {
            for (const Cell value : {Cell::Zero, Cell::One}) {
                if (gadget.get(r, c) == value) continue;
                PartialMatrix mutant = gadget;
                mutant.set(r, c, value);
                ++mutants;
                check.expect(!verify_two_tally(mutant, 2).ok(),
                             "entry mutation passed verification at (" + std::to_string(r) + "," +
                                 std::to_string(c) + ")");
            }
        }
    }

    const auto e21 = gen_ehd(2, 1);
    const auto witness = search_reduction(e21, blocky_candidates(e21), 1);
    check.expect(witness.has_value() && verify_witness(e21, *witness), "missing the base witness");
    int flips = 0;
    if (witness) {
        for (std::size_t bit = 0; bit < witness->f.table.size(); ++bit) {
            ReductionWitness mutant = *witness;
            mutant.f.table[bit] ^= 1;
            ++flips;
            check.expect(!verify_witness(e21, mutant), "combiner flip passed verification");
        }
    }
    const auto flat = flatten_protocol(ProtocolTree::single_query(gen_equality(2)));
    for (std::size_t bit = 0; bit < flat.f.table.size(); ++bit) {
        ReductionWitness mutant = flat;
        mutant.f.table[bit] ^= 1;
        ++flips;
        check.expect(!verify_witness(gen_equality(2), mutant), "flattened combiner flip passed verification");
    }
    return {9, "single mutations always break verification", check.ok,
            std::to_string(mutants) + " entry mutants and " + std::to_string(flips) + " combiner flips rejected" +
                (check.ok ? "" : "; first failure: " + check.first_failure)};
}

inline std::vector<CriterionResult> run_all(std::ostream& out) {
    using Criterion = std::function<CriterionResult()>;
    const std::vector<Criterion> criteria = {
        criterion_protocol_correctness, criterion_query_scaling, criterion_partition,
        criterion_structural_numbers,   criterion_gadget,        criterion_shuffle_invariance,
        criterion_ramsey,               criterion_reduction,     criterion_mutation,
    };
    std::vector<CriterionResult> results;
    for (const auto& criterion : criteria) {
        CriterionResult r;
        try {
            r = criterion();
        } catch (const std::exception& e) {
            r.id = static_cast<int>(results.size()) + 1;
            r.name = "criterion crashed";
            r.passed = false;
            r.detail = e.what();
        }
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << "  [" << r.detail << "]\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace qslab::acceptance
