#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qslab/matrix.hpp"

namespace qslab {

// Every problem family this lab can materialize as an explicit matrix.
enum class Family { EQ, GT, EHD, THD, IIP, SHATTERED_TWO_TALLY, EHD2_GADGET };

struct ProblemSpec {
    Family family = Family::EQ;
    int n = 0;  // string dimension (EQ/EHD/THD) or coordinate bits (IIP)
    int k = 0;  // distance parameter / shattering parameter
    int t = 0;  // GT side length
    int d = 0;  // IIP dimension
};

namespace detail {

inline void check_n(int n) {
    if (n < 1 || n > 14) throw domain_error("n out of range, need 1 <= n <= 14, got " + std::to_string(n));
}

inline Labels cube_labels(int n) {
    Labels l;
    l.dim = static_cast<std::size_t>(n);
    const std::size_t side = std::size_t{1} << n;
    l.rows.reserve(side);
    for (std::size_t v = 0; v < side; ++v) l.rows.push_back(Bits::of_integer(v, n));
    l.cols = l.rows;
    return l;
}

}  // namespace detail

// 2^n x 2^n identity pattern; row/column i is named by the n-bit numeral of i.
inline BitMatrix gen_equality(int n) {
    detail::check_n(n);
    const std::size_t side = std::size_t{1} << n;
    BitMatrix m(side, side);
    for (std::size_t i = 0; i < side; ++i) m.set(i, i, true);
    m.labels = detail::cube_labels(n);
    return m;
}

// t x t matrix with 1 exactly when row index <= column index (0-based here).
inline BitMatrix gen_gt(int t) {
    if (t < 1) throw domain_error("gt needs t >= 1");
    BitMatrix m(t, t);
    for (int i = 0; i < t; ++i) {
        for (int j = i; j < t; ++j) m.set(i, j, true);
    }
    return m;
}

// 1 exactly at Hamming distance k.
inline BitMatrix gen_ehd(int n, int k) {
    detail::check_n(n);
    if (k < 0 || k > n) throw domain_error("ehd needs 0 <= k <= n");
    const std::size_t side = std::size_t{1} << n;
    BitMatrix m(side, side);
    for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
            if (std::popcount(x ^ y) == k) m.set(x, y, true);
        }
    }
    m.labels = detail::cube_labels(n);
    return m;
}

// 1 exactly at Hamming distance <= k.
inline BitMatrix gen_thd(int n, int k) {
    detail::check_n(n);
    if (k < 0 || k > n) throw domain_error("thd needs 0 <= k <= n");
    const std::size_t side = std::size_t{1} << n;
    BitMatrix m(side, side);
    for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
            if (std::popcount(x ^ y) <= k) m.set(x, y, true);
        }
    }
    m.labels = detail::cube_labels(n);
    return m;
}

// Integer vectors in [-2^(n-1), 2^(n-1)]^d, both endpoints included, in
// lexicographic order; the entry is 0 exactly when the inner product is 0.
// Unlabeled: the index <-> vector mapping is exposed via iip_vector/iip_index.
inline std::size_t iip_side_length(int d, int n) {
    if (d < 1) throw domain_error("iip needs d >= 1");
    if (n < 1) throw domain_error("iip needs n >= 1");
    const std::size_t per_coord = (std::size_t{1} << n) + 1;
    std::size_t side = 1;
    for (int i = 0; i < d; ++i) {
        side *= per_coord;
        if (side > (std::size_t{1} << 14)) throw domain_error("iip size overflow: side length exceeds 2^14");
    }
    return side;
}

inline std::vector<long long> iip_vector(int d, int n, std::size_t index) {
    const long long half = 1ll << (n - 1);
    const std::size_t per_coord = (std::size_t{1} << n) + 1;
    std::vector<long long> v(d);
    for (int i = d - 1; i >= 0; --i) {
        v[i] = static_cast<long long>(index % per_coord) - half;
        index /= per_coord;
    }
    return v;
}

inline std::size_t iip_index(int d, int n, const std::vector<long long>& v) {
    const long long half = 1ll << (n - 1);
    const std::size_t per_coord = (std::size_t{1} << n) + 1;
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        const long long shifted = v[i] + half;
        if (shifted < 0 || shifted >= static_cast<long long>(per_coord)) throw domain_error("iip vector out of range");
        idx = idx * per_coord + static_cast<std::size_t>(shifted);
    }
    return idx;
}

inline BitMatrix gen_iip(int d, int n) {
    const std::size_t side = iip_side_length(d, n);
    std::vector<std::vector<long long>> pts(side);
    for (std::size_t i = 0; i < side; ++i) pts[i] = iip_vector(d, n, i);
    BitMatrix m(side, side);
    for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
            long long acc = 0;
            for (int i = 0; i < d; ++i) acc += pts[x][i] * pts[y][i];
            m.set(x, y, acc != 0);
        }
    }
    return m;
}

struct ShatteredTwoTally {
    PartialMatrix matrix;  // total, with labels
    int n = 0;             // string dimension used
};

// 2^k x k matrix whose k columns are shattered: column i is the i-th standard
// basis vector of {0,1}^n with n = 2k+1, and the row for S <= [k] carries 1s
// on S plus the last k-|S| coordinates. Row s uses bit i of s for membership
// of the (i+1)-th element, so rows enumerate subsets in binary counter order.
inline ShatteredTwoTally gen_shattered_two_tally(int k) {
    if (k < 1 || k > 6) throw domain_error("shattered-two-tally needs 1 <= k <= 6");
    const int n = 2 * k + 1;
    const std::size_t nrows = std::size_t{1} << k;
    PartialMatrix m(nrows, static_cast<std::size_t>(k));
    m.labels.dim = static_cast<std::size_t>(n);
    for (std::size_t s = 0; s < nrows; ++s) {
        Bits row_label(n);
        int size = 0;
        for (int i = 0; i < k; ++i) {
            if ((s >> i) & 1u) {
                row_label.set(i, true);
                ++size;
            }
        }
        for (int j = 0; j < k - size; ++j) row_label.set(n - 1 - j, true);
        m.labels.rows.push_back(row_label);
        for (int i = 0; i < k; ++i) m.set(s, i, ((s >> i) & 1u) ? Cell::One : Cell::Zero);
    }
    for (int i = 0; i < k; ++i) {
        Bits col_label(n);
        col_label.set(i, true);
        m.labels.cols.push_back(col_label);
    }
    return {std::move(m), n};
}

namespace detail {

// Lexicographically smallest weight-2 string at distance 2 from a and
// distance 4 from b; the two inputs must be distinct weight-2 strings.
inline Bits smallest_discriminator(const Bits& a, const Bits& b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Bits cand(n);
            cand.set(i, true);
            cand.set(j, true);
            if (hamming(a, cand) == 2 && hamming(b, cand) == 4) return cand;
        }
    }
    throw std::logic_error("no weight-2 discriminator exists for " + a.to_string() + " / " + b.to_string());
}

}  // namespace detail

// The 7-bit partial matrix with fixed distances 2 and 4 used to separate
// 2-Hamming-distance from 1-Hamming-distance. Rows start with the two
// weight-2 anchor strings and columns with the six rectangle strings; both
// sides are then extended by discriminator strings for every ordered pair on
// the opposite side. Entries: 1 at distance 2, 0 at distance 4, * otherwise.
inline PartialMatrix gen_ehd2_gadget() {
    const std::vector<Bits> xs = {Bits::from_string("0011000"), Bits::from_string("1100000")};
    const std::vector<Bits> y0 = {Bits::from_string("0000011"), Bits::from_string("0000101"),
                                  Bits::from_string("0000110")};
    const std::vector<Bits> y1 = {Bits::from_string("1010000"), Bits::from_string("1001000"),
                                  Bits::from_string("0101000")};

    std::vector<Bits> rows = xs;
    std::vector<Bits> cols = y0;
    cols.insert(cols.end(), y1.begin(), y1.end());

    auto push_unique = [](std::vector<Bits>& side, const Bits& v) {
        for (const Bits& u : side) {
            if (u == v) return;
        }
        side.push_back(v);
    };

    const std::vector<Bits> ys = cols;
    for (const Bits& a : ys) {
        for (const Bits& b : ys) {
            if (!(a == b)) push_unique(rows, detail::smallest_discriminator(a, b));
        }
    }
    for (const Bits& a : xs) {
        for (const Bits& b : xs) {
            if (!(a == b)) push_unique(cols, detail::smallest_discriminator(a, b));
        }
    }

    PartialMatrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::size_t dist = hamming(rows[r], cols[c]);
            m.set(r, c, dist == 2 ? Cell::One : (dist == 4 ? Cell::Zero : Cell::Star));
        }
    }
    m.labels.dim = 7;
    m.labels.rows = std::move(rows);
    m.labels.cols = std::move(cols);
    return m;
}

// Fills every * of a labelled partial matrix with the k-distance rule on its
// labels, so the result extends the given entries to a total matrix.
inline BitMatrix complete_by_distance(const PartialMatrix& p, int k) {
    if (!p.has_labels()) throw domain_error("completion needs labels");
    BitMatrix m(p.rows(), p.cols());
    for (std::size_t r = 0; r < p.rows(); ++r) {
        for (std::size_t c = 0; c < p.cols(); ++c) {
            const Cell v = p.get(r, c);
            if (v == Cell::Star) {
                m.set(r, c, hamming(p.labels.rows[r], p.labels.cols[c]) == static_cast<std::size_t>(k));
            } else {
                m.set(r, c, v == Cell::One);
            }
        }
    }
    m.labels = p.labels;
    return m;
}

inline BitMatrix generate(const ProblemSpec& spec) {
    switch (spec.family) {
        case Family::EQ: return gen_equality(spec.n);
        case Family::GT: return gen_gt(spec.t);
        case Family::EHD: return gen_ehd(spec.n, spec.k);
        case Family::THD: return gen_thd(spec.n, spec.k);
        case Family::IIP: return gen_iip(spec.d, spec.n);
        case Family::SHATTERED_TWO_TALLY: return to_bitmatrix(gen_shattered_two_tally(spec.k).matrix);
        case Family::EHD2_GADGET: return complete_by_distance(gen_ehd2_gadget(), 2);
    }
    throw domain_error("unknown problem family");
}

}  // namespace qslab
