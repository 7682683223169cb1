#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qslab/pattern.hpp"
#include "qslab/qs_ops.hpp"

namespace qslab {

struct StructureBudget {
    std::uint64_t nodes = 200'000'000;
};

namespace detail {

// Column bitsets over rows, duplicates collapsed (a duplicated column can
// never join a shattered set, and duplicated rows never add patterns).
struct ColumnView {
    std::size_t words = 0;
    std::vector<std::vector<std::uint64_t>> cols;

    explicit ColumnView(const BitMatrix& m) : words((m.rows() + 63) / 64) {
        std::vector<std::vector<std::uint64_t>> raw;
        raw.reserve(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::vector<std::uint64_t> w(words, 0);
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (m.get(r, c)) w[r >> 6] |= std::uint64_t{1} << (63 - (r & 63));
            }
            raw.push_back(std::move(w));
        }
        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        cols = std::move(raw);
    }
};

class VcSearch {
public:
    VcSearch(const BitMatrix& m, int cap, StructureBudget budget)
        : view_(m), cap_(cap), budget_(budget.nodes) {
        all_rows_.assign(view_.words, 0);
        for (std::size_t r = 0; r < m.rows(); ++r) all_rows_[r >> 6] |= std::uint64_t{1} << (63 - (r & 63));
    }

    int run() {
        std::vector<std::vector<std::uint64_t>> classes{all_rows_};
        if (nonempty(all_rows_)) extend(classes, 0, 0);
        return best_;
    }

private:
    bool nonempty(const std::vector<std::uint64_t>& w) const {
        for (std::uint64_t v : w) {
            if (v) return true;
        }
        return false;
    }

    void spend() {
        if (budget_ == 0) throw budget_error("vc dimension search budget exceeded");
        --budget_;
    }

    // classes holds one nonempty row set per realized pattern on the chosen
    // columns; adding a column must split every class into two nonempty parts.
    void extend(const std::vector<std::vector<std::uint64_t>>& classes, std::size_t next_col, int depth) {
        best_ = std::max(best_, depth);
        if (depth >= cap_) return;
        for (std::size_t c = next_col; c < view_.cols.size(); ++c) {
            if (depth + static_cast<int>(view_.cols.size() - c) <= best_) break;
            spend();
            std::vector<std::vector<std::uint64_t>> split;
            split.reserve(classes.size() * 2);
            bool ok = true;
            for (const auto& cls : classes) {
                std::vector<std::uint64_t> in(view_.words), out(view_.words);
                bool any_in = false, any_out = false;
                for (std::size_t i = 0; i < view_.words; ++i) {
                    in[i] = cls[i] & view_.cols[c][i];
                    out[i] = cls[i] & ~view_.cols[c][i];
                    any_in |= in[i] != 0;
                    any_out |= out[i] != 0;
                }
                if (!any_in || !any_out) {
                    ok = false;
                    break;
                }
                split.push_back(std::move(in));
                split.push_back(std::move(out));
            }
            if (ok) {
                extend(split, c + 1, depth + 1);
                if (best_ >= cap_) return;
            }
        }
    }

    ColumnView view_;
    int cap_;
    std::uint64_t budget_;
    std::vector<std::uint64_t> all_rows_;
    int best_ = 0;
};

}  // namespace detail

// Exact largest d <= cap such that some d columns are shattered by the rows.
inline int vc_dimension(const BitMatrix& m, int cap, StructureBudget budget = {}) {
    if (cap < 0 || cap > 20) throw domain_error("vc dimension cap must be within 0..20");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::VcSearch(m, cap, budget).run();
}

struct GtReport {
    int max_gt = 0;
    int max_negated_gt = 0;
    bool gt_at_cap = false;       // the search stopped at cap; true size may exceed it
    bool negated_at_cap = false;
    Embedding gt_witness;
    Embedding negated_witness;
};

namespace detail {

class GtSearch {
public:
    GtSearch(const BitMatrix& m, int cap, std::uint64_t budget) : m_(m), cap_(cap), budget_(budget) {
        wpc_ = (m.cols() + 63) / 64;
        wpr_ = (m.rows() + 63) / 64;
        // Rows with many 1s tend to sit early in a chain; purely a visit order.
        order_.resize(m.rows());
        std::iota(order_.begin(), order_.end(), 0u);
        std::vector<std::size_t> weight(m.rows(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::uint64_t w : m.row_words(r)) weight[r] += std::popcount(w);
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
        col_zero_.resize(m.cols() * wpr_, 0);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (!m.get(r, c)) col_zero_[c * wpr_ + (r >> 6)] |= std::uint64_t{1} << (63 - (r & 63));
            }
        }
    }

    std::pair<int, Embedding> run() {
        std::vector<std::uint64_t> all_cols(wpc_, ~std::uint64_t{0});
        if (m_.cols() & 63) all_cols.back() = ~std::uint64_t{0} << (64 - (m_.cols() & 63));
        std::vector<std::uint64_t> all_rows(wpr_, ~std::uint64_t{0});
        if (m_.rows() & 63) all_rows.back() = ~std::uint64_t{0} << (64 - (m_.rows() & 63));
        dfs(all_cols, all_rows, 0);
        return {best_, best_witness_};
    }

private:
    void spend() {
        if (budget_ == 0) throw budget_error("greater-than search budget exceeded");
        --budget_;
    }

    static std::size_t popcount(const std::vector<std::uint64_t>& w) {
        std::size_t c = 0;
        for (std::uint64_t v : w) c += std::popcount(v);
        return c;
    }

    // ones holds columns where every chosen row has 1 (candidates for the next
    // column role); zeros holds rows with 0 at every chosen column (candidates
    // for the next row role). Each extension picks a row from zeros, requires a
    // 1 there, then a column from ones restricted to that row.
    void dfs(const std::vector<std::uint64_t>& ones, const std::vector<std::uint64_t>& zeros, int depth) {
        if (depth > best_) {
            best_ = depth;
            best_witness_ = Embedding{stack_rows_, stack_cols_};
        }
        if (depth >= cap_) return;
        if (depth + static_cast<int>(std::min(popcount(ones), popcount(zeros))) <= best_) return;

        for (std::size_t r : order_) {
            if (!((zeros[r >> 6] >> (63 - (r & 63))) & 1u)) continue;
            spend();
            const auto rw = m_.row_words(r);
            std::vector<std::uint64_t> next_ones(wpc_);
            bool any = false;
            for (std::size_t i = 0; i < wpc_; ++i) {
                next_ones[i] = ones[i] & rw[i];
                any |= next_ones[i] != 0;
            }
            if (!any) continue;
            stack_rows_.push_back(r);
            for (std::size_t w = 0; w < wpc_; ++w) {
                std::uint64_t bits = next_ones[w];
                while (bits) {
                    const int lead = std::countl_zero(bits);
                    bits &= ~(std::uint64_t{1} << (63 - lead));
                    const std::size_t c = (w << 6) + static_cast<std::size_t>(lead);
                    std::vector<std::uint64_t> next_zeros(wpr_);
                    for (std::size_t i = 0; i < wpr_; ++i) next_zeros[i] = zeros[i] & col_zero_[c * wpr_ + i];
                    stack_cols_.push_back(c);
                    dfs(next_ones, next_zeros, depth + 1);
                    stack_cols_.pop_back();
                    if (best_ >= cap_) {
                        stack_rows_.pop_back();
                        return;
                    }
                }
            }
            stack_rows_.pop_back();
        }
    }

    const BitMatrix& m_;
    int cap_;
    std::uint64_t budget_;
    std::size_t wpc_, wpr_;
    std::vector<std::size_t> order_;
    std::vector<std::uint64_t> col_zero_;
    std::vector<std::size_t> stack_rows_, stack_cols_;
    int best_ = 0;
    Embedding best_witness_;
};

}  // namespace detail

// Exact size of the largest chain embedding (1 iff row role <= column role)
// in both orientations, up to cap per side.
inline GtReport max_gt_size(const BitMatrix& m, int cap, StructureBudget budget = {}) {
    if (cap < 1 || cap > 8) throw domain_error("greater-than cap must be within 1..8");
    GtReport report;
    {
        detail::GtSearch search(m, cap, budget.nodes);
        auto [size, witness] = search.run();
        report.max_gt = size;
        report.gt_at_cap = size >= cap;
        report.gt_witness = std::move(witness);
    }
    {
        const BitMatrix negated = negate(m);
        detail::GtSearch search(negated, cap, budget.nodes);
        auto [size, witness] = search.run();
        report.max_negated_gt = size;
        report.negated_at_cap = size >= cap;
        report.negated_witness = std::move(witness);
    }
    return report;
}

// True when both chain orientations stay strictly below t.
inline bool is_stable_upto(const BitMatrix& m, int t, StructureBudget budget = {}) {
    if (t < 1 || t > 8) throw domain_error("stability threshold must be within 1..8");
    const GtReport r = max_gt_size(m, t, budget);
    return r.max_gt < t && r.max_negated_gt < t;
}

}  // namespace qslab
