#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qslab/protocol/transcript.hpp"
#include "qslab/rng.hpp"

// Every protocol here is written as a single driver whose two private inputs
// are std::optional: a run with one input absent replays the other party
// against a recorded transcript, so the structure itself guarantees that each
// party's oracle arguments and the control flow depend only on that party's
// view, the shared inputs, and the public answers.

namespace qslab {

namespace detail {

inline int ceil_log2(std::uint64_t v) {
    if (v <= 1) return 0;
    return std::bit_width(v - 1);
}

inline std::vector<Bits> sorted_unique(std::vector<Bits> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline void check_uniform_dimension(const std::vector<Bits>& z, const char* what) {
    for (const Bits& b : z) {
        if (b.size() != z.front().size()) throw domain_error(std::string(what) + ": strings have mixed dimensions");
    }
}

inline std::optional<Bits> project(const std::optional<Bits>& v, const std::vector<int>& positions) {
    if (!v) return std::nullopt;
    return v->extract(positions);
}

inline Bits position_mask(const std::vector<int>& positions, std::size_t dim) {
    Bits m(dim);
    for (int p : positions) m.set(static_cast<std::size_t>(p), true);
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Greater-than from equality queries alone: binary search for the first
// differing bit of the two index numerals via prefix-equality queries, then
// one query comparing the differing bit against the constant 0. Worst case
// ceil(log2(ceil(log2 N))) + 2 queries.
// ---------------------------------------------------------------------------

// Decides i <= j for i, j in {1..domain_size}. Absent inputs replay a party.
inline int eq_gt_run(std::uint64_t domain_size, const std::optional<std::uint64_t>& i,
                     const std::optional<std::uint64_t>& j, EqPort& port) {
    if (domain_size < 1) throw domain_error("greater-than domain must be nonempty");
    const int width = detail::ceil_log2(domain_size);
    auto numeral = [&](const std::optional<std::uint64_t>& v) -> std::optional<Bits> {
        if (!v) return std::nullopt;
        if (*v < 1 || *v > domain_size) throw domain_error("greater-than input out of domain");
        return Bits::of_integer(*v - 1, width);
    };
    const std::optional<Bits> a = numeral(i), b = numeral(j);
    auto pref = [](const std::optional<Bits>& v, int len) -> std::optional<Bits> {
        if (!v) return std::nullopt;
        return v->prefix(len);
    };

    if (port.query("EQ", a, b, "gt: full numerals") == 1) return 1;
    // longest common prefix length lies in [lo, hi)
    int lo = 0, hi = width;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (port.query("EQ", pref(a, mid), pref(b, mid), "gt: prefix " + std::to_string(mid)) == 1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    auto bit_at = [&](const std::optional<Bits>& v) -> std::optional<Bits> {
        if (!v) return std::nullopt;
        Bits one(1);
        one.set(0, v->get(static_cast<std::size_t>(lo)));
        return one;
    };
    // smaller numeral has 0 at the first differing bit
    const std::optional<Bits> zero = b ? std::optional<Bits>(Bits(1)) : std::nullopt;
    return port.query("EQ", bit_at(a), zero, "gt: first differing bit vs 0");
}

struct GtRun {
    int result = 0;  // 1 iff i <= j
    Transcript transcript;
};

inline GtRun eq_gt_protocol(std::uint64_t domain_size, std::uint64_t i, std::uint64_t j) {
    GtRun run;
    LiveEqPort port(run.transcript);
    run.result = eq_gt_run(domain_size, i, j, port);
    return run;
}

// ---------------------------------------------------------------------------
// Threshold distance by repeated binary search over the raw coordinates:
// find the first differing position, drop it, repeat up to k+1 times.
// Query count grows with the dimension.
// ---------------------------------------------------------------------------

inline std::optional<int> naive_thd_run(const std::optional<Bits>& x, const std::optional<Bits>& y,
                                        std::size_t dim, int k, EqPort& port) {
    if (k < 0) throw domain_error("threshold must be nonnegative");
    std::vector<int> active(dim);
    std::iota(active.begin(), active.end(), 0);
    auto prefix_positions = [&](std::size_t len) {
        return std::vector<int>(active.begin(), active.begin() + len);
    };
    int confirmed = 0;
    while (true) {
        if (port.query("EQ", detail::project(x, active), detail::project(y, active),
                       "thd: active positions") == 1) {
            return confirmed;
        }
        if (confirmed == k) return std::nullopt;
        // first differing active position sits at index [lo, hi)
        std::size_t lo = 0, hi = active.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            const auto head = prefix_positions(mid);
            if (port.query("EQ", detail::project(x, head), detail::project(y, head),
                           "thd: prefix " + std::to_string(mid)) == 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(lo));
        ++confirmed;
    }
}

struct DistanceRun {
    std::optional<int> distance;  // absent = over threshold
    Transcript transcript;
};

inline DistanceRun naive_thd_protocol(const Bits& x, const Bits& y, int k) {
    if (x.size() != y.size()) throw domain_error("inputs must share a dimension");
    DistanceRun run;
    LiveEqPort port(run.transcript);
    run.distance = naive_thd_run(x, y, x.size(), k, port);
    return run;
}

// ---------------------------------------------------------------------------
// Coordinate partition of a string set: random halves, verified exhaustively
// over all pairs so that whenever one side agrees, the other differs on at
// most 3*log2 N bits. Retry with derived seeds until a verified partition
// appears.
// ---------------------------------------------------------------------------

struct Partition {
    std::vector<int> a, b;
    int tries_used = 0;
};

inline bool partition_valid(const std::vector<Bits>& z, const Bits& mask_a, double threshold) {
    const Bits mask_b = ~mask_a;
    const auto wa = mask_a.words(), wb = mask_b.words();
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const auto u = z[i].words(), v = z[j].words();
            bool a_differs = false, b_differs = false;
            for (std::size_t w = 0; w < u.size(); ++w) {
                const std::uint64_t diff = u[w] ^ v[w];
                a_differs = a_differs || (diff & wa[w]);
                b_differs = b_differs || (diff & wb[w]);
                if (a_differs && b_differs) break;
            }
            if (!a_differs || !b_differs) {
                std::size_t other = 0;
                const auto& mask = !a_differs ? wb : wa;
                for (std::size_t w = 0; w < u.size(); ++w) other += std::popcount((u[w] ^ v[w]) & mask[w]);
                if (static_cast<double>(other) > threshold + 1e-9) return false;
            }
        }
    }
    return true;
}

inline Partition diameter_partition(const std::vector<Bits>& z_in, std::uint64_t seed, int max_tries) {
    std::vector<Bits> z = detail::sorted_unique(z_in);
    if (z.size() < 2) throw domain_error("partition needs at least two distinct strings");
    detail::check_uniform_dimension(z, "partition");
    const std::size_t dim = z.front().size();
    const double threshold = 3.0 * std::log2(static_cast<double>(z.size()));
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        const Bits mask_a = random_bits(rng, dim);
        if (partition_valid(z, mask_a, threshold)) {
            Partition p;
            p.tries_used = attempt + 1;
            for (std::size_t i = 0; i < dim; ++i) {
                (mask_a.get(i) ? p.a : p.b).push_back(static_cast<int>(i));
            }
            return p;
        }
    }
    throw budget_error("no partition found within " + std::to_string(max_tries) + " tries");
}

// ---------------------------------------------------------------------------
// Threshold distance on a promised low-diameter set: both sides express their
// input as an offset from the lexicographically first member, then locate and
// discard the smallest differing position up to k times. Locating uses halving
// splits decided by equality queries, and the final "who discards" decision is
// one greater-than run over the ranks inside the support set; an exhausted
// side enters with the sentinel rank past the end, which hands the discard to
// the other party. Queries per round: O(log log N).
// ---------------------------------------------------------------------------

inline std::optional<int> bounded_diameter_run(const std::vector<Bits>& z_in, const std::optional<Bits>& x,
                                               const std::optional<Bits>& y, int k, EqPort& port) {
    if (k < 0) throw domain_error("threshold must be nonnegative");
    const std::vector<Bits> z = detail::sorted_unique(z_in);
    if (z.empty()) throw domain_error("the promise set is empty");
    detail::check_uniform_dimension(z, "bounded-diameter protocol");
    const std::size_t dim = z.front().size();
    const Bits& anchor = z.front();

    // support positions and the widest offset, shared knowledge
    std::vector<int> support;
    std::size_t max_weight = 0;
    {
        Bits acc(dim);
        for (const Bits& w : z) {
            const Bits diff = w ^ anchor;
            max_weight = std::max(max_weight, diff.count());
            for (std::size_t i = 0; i < dim; ++i) {
                if (diff.get(i)) acc.set(i, true);
            }
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (acc.get(i)) support.push_back(static_cast<int>(i));
        }
    }
    std::vector<int> rank_of(dim, -1);
    for (std::size_t r = 0; r < support.size(); ++r) rank_of[support[r]] = static_cast<int>(r);

    const int start_width = std::max(
        static_cast<int>(std::ceil(3.0 * std::log2(static_cast<double>(std::max<std::size_t>(z.size(), 2))))),
        static_cast<int>(max_weight));

    auto offsets = [&](const std::optional<Bits>& v) -> std::optional<std::vector<int>> {
        if (!v) return std::nullopt;
        if (v->size() != dim) throw domain_error("input dimension mismatch");
        std::vector<int> s;
        const Bits diff = *v ^ anchor;
        for (std::size_t i = 0; i < dim; ++i) {
            if (diff.get(i)) s.push_back(static_cast<int>(i));
        }
        return s;
    };
    auto mask_arg = [&](const std::optional<std::vector<int>>& s) -> std::optional<Bits> {
        if (!s) return std::nullopt;
        return detail::position_mask(*s, dim);
    };
    auto head = [](const std::optional<std::vector<int>>& s, int len) -> std::optional<std::vector<int>> {
        if (!s) return std::nullopt;
        const std::size_t take = std::min<std::size_t>(s->size(), static_cast<std::size_t>(len));
        return std::vector<int>(s->begin(), s->begin() + take);
    };
    auto tail = [](const std::optional<std::vector<int>>& s, int len) -> std::optional<std::vector<int>> {
        if (!s) return std::nullopt;
        const std::size_t take = std::min<std::size_t>(s->size(), static_cast<std::size_t>(len));
        return std::vector<int>(s->begin() + take, s->end());
    };

    std::optional<std::vector<int>> s = offsets(x), t = offsets(y);
    int confirmed = 0;
    while (true) {
        if (confirmed == k) break;
        if (port.query("EQ", mask_arg(s), mask_arg(t), "bd: offset sets") == 1) return confirmed;

        // shrink to the smallest differing position
        std::optional<std::vector<int>> s_cur = s, t_cur = t;
        int width = start_width;
        while (width > 1) {
            width = (width + 1) / 2;
            const auto s_head = head(s_cur, width), t_head = head(t_cur, width);
            if (port.query("EQ", mask_arg(s_head), mask_arg(t_head),
                           "bd: leading " + std::to_string(width)) == 1) {
                s_cur = tail(s_cur, width);
                t_cur = tail(t_cur, width);
            } else {
                s_cur = s_head;
                t_cur = t_head;
            }
        }

        // ranks inside the support set; an empty side uses the sentinel rank
        const std::uint64_t sentinel = support.size() + 1;
        auto rank_arg = [&](const std::optional<std::vector<int>>& cur) -> std::optional<std::uint64_t> {
            if (!cur) return std::nullopt;
            if (cur->empty()) return sentinel;
            return static_cast<std::uint64_t>(rank_of[cur->front()]) + 1;
        };
        const int alice_discards = eq_gt_run(sentinel, rank_arg(s_cur), rank_arg(t_cur), port);
        auto drop = [](std::optional<std::vector<int>>& side, const std::optional<std::vector<int>>& cur) {
            if (!side) return;
            // both sides cannot be exhausted while the offset sets differ
            if (cur->empty()) throw std::logic_error("both difference candidates emptied on unequal sets");
            const int victim = cur->front();
            side->erase(std::find(side->begin(), side->end(), victim));
        };
        if (alice_discards == 1) {
            drop(s, s_cur);
        } else {
            drop(t, t_cur);
        }
        ++confirmed;
    }
    if (port.query("EQ", mask_arg(s), mask_arg(t), "bd: final offset sets") == 1) return confirmed;
    return std::nullopt;
}

struct BoundedDiameterOptions {
    bool validate_diameter = true;  // brute-force check of the promise
};

inline DistanceRun bounded_diameter_threshold(const std::vector<Bits>& z, const Bits& x, const Bits& y, int k,
                                              BoundedDiameterOptions opt = {}) {
    const std::vector<Bits> zs = detail::sorted_unique(z);
    auto member = [&](const Bits& v) { return std::binary_search(zs.begin(), zs.end(), v); };
    if (!member(x) || !member(y)) throw domain_error("inputs must belong to the promise set");
    if (opt.validate_diameter) {
        const double threshold = 3.0 * std::log2(static_cast<double>(zs.size()));
        for (std::size_t i = 0; i < zs.size(); ++i) {
            for (std::size_t j = i + 1; j < zs.size(); ++j) {
                if (static_cast<double>(hamming(zs[i], zs[j])) > threshold + 1e-9) {
                    throw domain_error("promise violated: set diameter exceeds 3*log2 N");
                }
            }
        }
    }
    DistanceRun run;
    LiveEqPort port(run.transcript);
    run.distance = bounded_diameter_run(zs, x, y, k, port);
    return run;
}

// ---------------------------------------------------------------------------
// Full threshold-distance protocol: equality tests on the two halves of a
// verified partition either reduce to the bounded-diameter case (one half
// agrees) or recurse on both halves with split budgets.
// ---------------------------------------------------------------------------

struct ThresholdOptions {
    std::uint64_t seed = 0;
    int partition_max_tries = 64;
};

inline std::optional<int> threshold_distance_run(const std::vector<Bits>& xs, const std::vector<Bits>& ys,
                                                 const std::optional<Bits>& x, const std::optional<Bits>& y,
                                                 int k, EqPort& port, SeedStream& seeds, int partition_max_tries) {
    if (k < 0) throw domain_error("threshold must be nonnegative");
    if (port.query("EQ", x, y, "td: inputs") == 1) return 0;
    if (k == 0) return std::nullopt;

    std::vector<Bits> z = xs;
    z.insert(z.end(), ys.begin(), ys.end());
    z = detail::sorted_unique(z);
    const Partition part = diameter_partition(z, seeds.next(), partition_max_tries);

    const int eq_a = port.query("EQ", detail::project(x, part.a), detail::project(y, part.a), "td: left half");
    const int eq_b = port.query("EQ", detail::project(x, part.b), detail::project(y, part.b), "td: right half");

    if (eq_a == 1 && eq_b == 1) throw std::logic_error("halves both equal although the inputs differ");
    if (eq_a != eq_b) {
        const auto& agree = eq_a == 1 ? part.a : part.b;
        const auto& differ = eq_a == 1 ? part.b : part.a;
        // both parties hold the same agreeing projection, so either view works
        const Bits agreed = x ? x->extract(agree) : y->extract(agree);
        std::vector<Bits> cls;
        for (const Bits& w : z) {
            if (w.extract(agree) == agreed) cls.push_back(w.extract(differ));
        }
        return bounded_diameter_run(cls, detail::project(x, differ), detail::project(y, differ), k, port);
    }

    auto side = [&](const std::vector<Bits>& src, const std::vector<int>& pos) {
        std::vector<Bits> out;
        out.reserve(src.size());
        for (const Bits& w : src) out.push_back(w.extract(pos));
        return detail::sorted_unique(out);
    };
    const auto t = threshold_distance_run(side(xs, part.a), side(ys, part.a), detail::project(x, part.a),
                                          detail::project(y, part.a), k - 1, port, seeds, partition_max_tries);
    if (!t) return std::nullopt;
    const auto r = threshold_distance_run(side(xs, part.b), side(ys, part.b), detail::project(x, part.b),
                                          detail::project(y, part.b), k - *t, port, seeds, partition_max_tries);
    if (!r) return std::nullopt;
    return *t + *r;
}

inline DistanceRun threshold_distance(const std::vector<Bits>& xs, const std::vector<Bits>& ys, const Bits& x,
                                      const Bits& y, int k, ThresholdOptions opt = {}) {
    auto contains = [](const std::vector<Bits>& v, const Bits& needle) {
        for (const Bits& b : v) {
            if (b == needle) return true;
        }
        return false;
    };
    if (!contains(xs, x)) throw domain_error("x must belong to X");
    if (!contains(ys, y)) throw domain_error("y must belong to Y");
    DistanceRun run;
    LiveEqPort port(run.transcript);
    SeedStream seeds(opt.seed);
    run.distance = threshold_distance_run(xs, ys, x, y, k, port, seeds, opt.partition_max_tries);
    return run;
}

}  // namespace qslab
