#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qslab/qs_ops.hpp"

namespace qslab {

// Boolean combiner over c query answers; index bit i is query i's answer.
struct TruthTable {
    int arity = 0;
    std::vector<std::uint8_t> table;  // 2^arity entries

    static TruthTable constant(int arity, bool value) {
        TruthTable f;
        f.arity = arity;
        f.table.assign(std::size_t{1} << arity, value ? 1 : 0);
        return f;
    }

    bool eval(std::uint32_t answers) const { return table[answers] != 0; }

    std::string to_bitstring() const {
        std::string s;
        s.reserve(table.size());
        for (std::uint8_t v : table) s += v ? '1' : '0';
        return s;
    }

    static TruthTable from_bitstring(const std::string& s) {
        TruthTable f;
        f.table.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw domain_error("truth table bitstring may contain only 0/1");
            f.table.push_back(c == '1');
        }
        if (s.empty() || (s.size() & (s.size() - 1)) != 0) {
            throw domain_error("truth table length must be a power of two");
        }
        f.arity = std::countr_zero(s.size());
        return f;
    }
};

// Certificate that target(x,y) = f(Q_1(x,y), ..., Q_c(x,y)) entrywise.
struct ReductionWitness {
    std::vector<BitMatrix> queries;
    TruthTable f;
};

inline void check_witness_shape(const BitMatrix& target, const ReductionWitness& w) {
    if (w.f.arity != static_cast<int>(w.queries.size())) {
        throw domain_error("witness arity does not match its query count");
    }
    if (w.f.table.size() != (std::size_t{1} << w.f.arity)) throw domain_error("witness truth table has wrong size");
    for (const BitMatrix& q : w.queries) {
        if (q.rows() != target.rows() || q.cols() != target.cols()) {
            throw domain_error("witness query shape differs from the target");
        }
    }
}

// Entrywise check of the certified identity.
inline bool verify_witness(const BitMatrix& target, const ReductionWitness& w) {
    check_witness_shape(target, w);
    for (std::size_t r = 0; r < target.rows(); ++r) {
        for (std::size_t c = 0; c < target.cols(); ++c) {
            std::uint32_t answers = 0;
            for (std::size_t qi = 0; qi < w.queries.size(); ++qi) {
                answers |= static_cast<std::uint32_t>(w.queries[qi].get(r, c)) << qi;
            }
            if (w.f.eval(answers) != target.get(r, c)) return false;
        }
    }
    return true;
}

// Canonical form of membership in the closure of identity matrices: a row and
// column labeling with Q(x,y) = 1 exactly when both carry the same label.
struct BlockyLabeling {
    std::vector<int> row_label;  // -1 = unlabelled
    std::vector<int> col_label;
    int label_count = 0;
};

// A matrix is blocky exactly when rows with intersecting 1-sets have
// identical 1-sets; the 1-regions then tile into disjoint rectangles.
inline std::optional<BlockyLabeling> is_blocky(const BitMatrix& m) {
    if (m.rows() > 1024 || m.cols() > 1024) throw domain_error("blocky check supports matrices up to 1024 per side");
    BlockyLabeling out;
    out.row_label.assign(m.rows(), -1);
    out.col_label.assign(m.cols(), -1);
    std::vector<Bits> groups;           // distinct nonzero row 1-sets
    Bits covered(m.cols());             // union of group supports
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Bits set = m.row(r);
        if (set.count() == 0) continue;
        int label = -1;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g] == set) {
                label = static_cast<int>(g);
                break;
            }
        }
        if (label < 0) {
            if ((covered & set).count() != 0) return std::nullopt;  // overlaps a different 1-set
            label = static_cast<int>(groups.size());
            groups.push_back(set);
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (set.get(c)) {
                    covered.set(c, true);
                    out.col_label[c] = label;
                }
            }
        }
        out.row_label[r] = label;
    }
    out.label_count = static_cast<int>(groups.size());
    return out;
}

inline BitMatrix blocky_to_matrix(const BlockyLabeling& l, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, l.row_label[r] >= 0 && l.row_label[r] == l.col_label[c]);
        }
    }
    return m;
}

// Candidates for a single blocky query against this target. A unary combiner
// forces the query to equal the target or its negation entrywise, so testing
// those two (when blocky) plus the all-ones matrix for constant targets is
// exhaustive over the whole closure of identity matrices at c = 1.
inline std::vector<BitMatrix> blocky_candidates(const BitMatrix& target) {
    std::vector<BitMatrix> out;
    if (is_blocky(target)) out.push_back(target);
    const BitMatrix neg = negate(target);
    if (is_blocky(neg)) out.push_back(neg);
    BitMatrix ones(target.rows(), target.cols());
    for (std::size_t r = 0; r < target.rows(); ++r) {
        for (std::size_t c = 0; c < target.cols(); ++c) ones.set(r, c, true);
    }
    out.push_back(ones);
    return out;
}

// Every blocky matrix of a tiny shape, for exercising multi-query search.
inline std::vector<BitMatrix> all_blocky_matrices(std::size_t rows, std::size_t cols, std::uint64_t budget = 1'000'000) {
    if (rows > 4 || cols > 4) throw domain_error("exhaustive blocky enumeration supports shapes up to 4x4");
    std::vector<BitMatrix> out;
    std::vector<Bits> seen;
    const std::size_t labels = std::min(rows, cols);
    std::vector<int> rl(rows), cl(cols);
    auto emit = [&]() {
        if (budget-- == 0) throw budget_error("blocky enumeration budget exceeded");
        BlockyLabeling l{rl, cl, static_cast<int>(labels)};
        BitMatrix m = blocky_to_matrix(l, rows, cols);
        Bits key(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) key.set(r * cols + c, m.get(r, c));
        }
        for (const Bits& s : seen) {
            if (s == key) return;
        }
        seen.push_back(key);
        out.push_back(std::move(m));
    };
    auto fill_cols = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cols) {
            emit();
            return;
        }
        for (int v = -1; v < static_cast<int>(labels); ++v) {
            cl[idx] = v;
            self(self, idx + 1);
        }
    };
    auto fill_rows = [&](auto&& self, std::size_t idx) -> void {
        if (idx == rows) {
            fill_cols(fill_cols, 0);
            return;
        }
        for (int v = -1; v < static_cast<int>(labels); ++v) {
            rl[idx] = v;
            self(self, idx + 1);
        }
    };
    fill_rows(fill_rows, 0);
    return out;
}

// Exhaustive search for a witness over the given candidate queries. For each
// query tuple the combiner is forced pointwise; a conflict rules the tuple
// out, so the enumeration is complete over (candidates, all combiners).
inline std::optional<ReductionWitness> search_reduction(const BitMatrix& target,
                                                        const std::vector<BitMatrix>& candidates, int c,
                                                        std::uint64_t budget = 1'000'000) {
    if (c < 0 || c > 2) throw domain_error("reduction search supports 0 <= c <= 2");
    for (const BitMatrix& q : candidates) {
        if (q.rows() != target.rows() || q.cols() != target.cols()) {
            throw domain_error("candidate query shape differs from the target");
        }
    }
    std::vector<std::size_t> pick(c);
    auto attempt = [&]() -> std::optional<ReductionWitness> {
        if (budget == 0) throw budget_error("reduction search budget exceeded");
        --budget;
        std::vector<std::int8_t> forced(std::size_t{1} << c, -1);
        for (std::size_t r = 0; r < target.rows(); ++r) {
            for (std::size_t cc = 0; cc < target.cols(); ++cc) {
                std::uint32_t answers = 0;
                for (int qi = 0; qi < c; ++qi) {
                    answers |= static_cast<std::uint32_t>(candidates[pick[qi]].get(r, cc)) << qi;
                }
                const std::int8_t want = target.get(r, cc) ? 1 : 0;
                if (forced[answers] < 0) {
                    forced[answers] = want;
                } else if (forced[answers] != want) {
                    return std::nullopt;
                }
            }
        }
        ReductionWitness w;
        for (int qi = 0; qi < c; ++qi) w.queries.push_back(candidates[pick[qi]]);
        w.f.arity = c;
        for (std::int8_t v : forced) w.f.table.push_back(v == 1 ? 1 : 0);
        return w;
    };
    auto recurse = [&](auto&& self, int idx) -> std::optional<ReductionWitness> {
        if (idx == c) return attempt();
        for (pick[idx] = 0; pick[idx] < candidates.size(); ++pick[idx]) {
            if (auto w = self(self, idx + 1)) return w;
        }
        return std::nullopt;
    };
    if (c > 0 && candidates.empty()) return std::nullopt;
    return recurse(recurse, 0);
}

}  // namespace qslab
