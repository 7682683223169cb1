#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qslab/matrix.hpp"

namespace qslab {

// One closure operation on a matrix: permute an axis, select a submatrix,
// or duplicate rows/columns. A list of these generates the query set of a
// matrix, so any member of that set is reachable from a base matrix.
struct QsOp {
    enum class Kind { PermuteRows, PermuteCols, Select, DuplicateRows, DuplicateCols };

    Kind kind;
    // PermuteRows/Cols: image[i] = source index moved to slot i (a bijection).
    std::vector<std::size_t> perm;
    // Select: strictly increasing index subsets (empty list keeps the axis whole).
    std::vector<std::size_t> keep_rows;
    std::vector<std::size_t> keep_cols;
    // DuplicateRows/Cols: copies[i] >= 1 copies of index i, kept in place.
    std::vector<std::size_t> copies;

    static QsOp permute_rows(std::vector<std::size_t> p) { return {Kind::PermuteRows, std::move(p), {}, {}, {}}; }
    static QsOp permute_cols(std::vector<std::size_t> p) { return {Kind::PermuteCols, std::move(p), {}, {}, {}}; }
    static QsOp select(std::vector<std::size_t> r, std::vector<std::size_t> c) {
        return {Kind::Select, {}, std::move(r), std::move(c), {}};
    }
    static QsOp duplicate_rows(std::vector<std::size_t> m) { return {Kind::DuplicateRows, {}, {}, {}, std::move(m)}; }
    static QsOp duplicate_cols(std::vector<std::size_t> m) { return {Kind::DuplicateCols, {}, {}, {}, std::move(m)}; }
};

using QsOpSpec = std::vector<QsOp>;

namespace detail {

inline void check_bijection(const std::vector<std::size_t>& perm, std::size_t n, const std::string& where) {
    if (perm.size() != n) throw domain_error(where + ": permutation has size " + std::to_string(perm.size()) + ", axis has " + std::to_string(n));
    std::vector<char> seen(n, 0);
    for (std::size_t v : perm) {
        if (v >= n || seen[v]) throw domain_error(where + ": not a bijection");
        seen[v] = 1;
    }
}

inline void check_subset(const std::vector<std::size_t>& idx, std::size_t n, const std::string& where) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= n) throw domain_error(where + ": index " + std::to_string(idx[i]) + " out of range");
        if (i > 0 && idx[i] <= idx[i - 1]) throw domain_error(where + ": selection must be strictly increasing");
    }
}

}  // namespace detail

// Applies the operations in order. Labels travel with their rows/columns, so
// entry values are only selected, copied, or moved, never rewritten.
inline BitMatrix apply_qs_ops(const BitMatrix& m, const QsOpSpec& spec) {
    BitMatrix cur = m;
    for (std::size_t step = 0; step < spec.size(); ++step) {
        const QsOp& op = spec[step];
        const std::string where = "qs op " + std::to_string(step);
        std::vector<std::size_t> row_src, col_src;
        switch (op.kind) {
            case QsOp::Kind::PermuteRows:
                detail::check_bijection(op.perm, cur.rows(), where + " (row permutation)");
                row_src = op.perm;
                for (std::size_t c = 0; c < cur.cols(); ++c) col_src.push_back(c);
                break;
            case QsOp::Kind::PermuteCols:
                detail::check_bijection(op.perm, cur.cols(), where + " (column permutation)");
                col_src = op.perm;
                for (std::size_t r = 0; r < cur.rows(); ++r) row_src.push_back(r);
                break;
            case QsOp::Kind::Select:
                detail::check_subset(op.keep_rows, cur.rows(), where + " (row selection)");
                detail::check_subset(op.keep_cols, cur.cols(), where + " (column selection)");
                row_src = op.keep_rows;
                col_src = op.keep_cols;
                if (row_src.empty()) {
                    for (std::size_t r = 0; r < cur.rows(); ++r) row_src.push_back(r);
                }
                if (col_src.empty()) {
                    for (std::size_t c = 0; c < cur.cols(); ++c) col_src.push_back(c);
                }
                break;
            case QsOp::Kind::DuplicateRows:
                if (op.copies.size() != cur.rows()) throw domain_error(where + " (row duplication): multiplicity map has wrong size");
                for (std::size_t r = 0; r < cur.rows(); ++r) {
                    if (op.copies[r] == 0) throw domain_error(where + " (row duplication): multiplicity must be >= 1");
                    for (std::size_t t = 0; t < op.copies[r]; ++t) row_src.push_back(r);
                }
                for (std::size_t c = 0; c < cur.cols(); ++c) col_src.push_back(c);
                break;
            case QsOp::Kind::DuplicateCols:
                if (op.copies.size() != cur.cols()) throw domain_error(where + " (column duplication): multiplicity map has wrong size");
                for (std::size_t c = 0; c < cur.cols(); ++c) {
                    if (op.copies[c] == 0) throw domain_error(where + " (column duplication): multiplicity must be >= 1");
                    for (std::size_t t = 0; t < op.copies[c]; ++t) col_src.push_back(c);
                }
                for (std::size_t r = 0; r < cur.rows(); ++r) row_src.push_back(r);
                break;
        }

        BitMatrix next(row_src.size(), col_src.size());
        for (std::size_t r = 0; r < row_src.size(); ++r) {
            for (std::size_t c = 0; c < col_src.size(); ++c) {
                next.set(r, c, cur.get(row_src[r], col_src[c]));
            }
        }
        if (cur.has_labels()) {
            next.labels.dim = cur.labels.dim;
            for (std::size_t r : row_src) next.labels.rows.push_back(cur.labels.rows[r]);
            for (std::size_t c : col_src) next.labels.cols.push_back(cur.labels.cols[c]);
        }
        cur = std::move(next);
    }
    return cur;
}

inline BitMatrix negate(const BitMatrix& m) {
    BitMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) r.set(i, j, !m.get(i, j));
    }
    r.labels = m.labels;
    return r;
}

// Complements 0/1 entries and keeps * in place.
inline PartialMatrix negate(const PartialMatrix& m) {
    PartialMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Cell v = m.get(i, j);
            r.set(i, j, v == Cell::Star ? Cell::Star : (v == Cell::Zero ? Cell::One : Cell::Zero));
        }
    }
    r.labels = m.labels;
    return r;
}

}  // namespace qslab
