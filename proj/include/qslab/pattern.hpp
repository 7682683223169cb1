#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qslab/matrix.hpp"

namespace qslab {

// Row/column index sequences into the host matrix, in pattern order.
struct Embedding {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

struct PatternSearchOptions {
    // Selected row vectors (and column vectors) must be pairwise distinct as
    // vectors; index distinctness alone is not enough once duplication is free.
    bool require_distinct = false;
    // Counts attempted row/column placements; exceeding it raises budget_error.
    std::uint64_t budget = 10'000'000;
};

namespace detail {

class PatternSearch {
public:
    PatternSearch(const BitMatrix& m, const PartialMatrix& p, PatternSearchOptions opt)
        : m_(m), p_(p), opt_(opt), wpc_((m.cols() + 63) / 64), wpr_((m.rows() + 63) / 64) {
        // Pattern columns with identical constraints share one candidate set.
        std::map<std::vector<Cell>, std::size_t> groups;
        col_group_.resize(p_.cols());
        for (std::size_t c = 0; c < p_.cols(); ++c) {
            std::vector<Cell> sig(p_.rows());
            for (std::size_t r = 0; r < p_.rows(); ++r) sig[r] = p_.get(r, c);
            auto [it, fresh] = groups.emplace(std::move(sig), groups.size());
            col_group_[c] = it->second;
            if (fresh) {
                group_size_.push_back(0);
                group_rep_.push_back(c);
            }
            ++group_size_[it->second];
        }
        ngroups_ = group_size_.size();
        cand_stack_.assign((p_.rows() + 1) * ngroups_ * wpc_, 0);
        std::vector<std::uint64_t> full(wpc_, ~std::uint64_t{0});
        if (m_.cols() == 0) {
            full.assign(wpc_, 0);
        } else if (m_.cols() & 63) {
            full.back() = ~std::uint64_t{0} << (64 - (m_.cols() & 63));
        }
        for (std::size_t g = 0; g < ngroups_; ++g) {
            std::copy(full.begin(), full.end(), cand(0, g));
        }
        if (opt_.require_distinct) {
            col_words_.resize(m_.cols() * wpr_, 0);
            for (std::size_t r = 0; r < m_.rows(); ++r) {
                for (std::size_t c = 0; c < m_.cols(); ++c) {
                    if (m_.get(r, c)) col_words_[c * wpr_ + (r >> 6)] |= std::uint64_t{1} << (63 - (r & 63));
                }
            }
        }
    }

    std::optional<Embedding> run() {
        chosen_rows_.clear();
        chosen_cols_.clear();
        if (place_row(0)) return Embedding{chosen_rows_, chosen_cols_};
        return std::nullopt;
    }

private:
    std::uint64_t* cand(std::size_t depth, std::size_t g) {
        return cand_stack_.data() + (depth * ngroups_ + g) * wpc_;
    }

    void spend() {
        if (opt_.budget == 0) throw budget_error("pattern search budget exceeded");
        --opt_.budget;
    }

    bool col_vectors_equal(std::size_t c1, std::size_t c2) const {
        for (std::size_t i = 0; i < wpr_; ++i) {
            if (col_words_[c1 * wpr_ + i] != col_words_[c2 * wpr_ + i]) return false;
        }
        return true;
    }

    // Candidate sets at this depth must still admit an assignment.
    bool feasible(std::size_t depth) {
        if (opt_.require_distinct) union_buf_.assign(wpc_, 0);
        for (std::size_t g = 0; g < ngroups_; ++g) {
            const std::uint64_t* w = cand(depth, g);
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < wpc_; ++i) {
                cnt += std::popcount(w[i]);
                if (opt_.require_distinct) union_buf_[i] |= w[i];
            }
            if (cnt == 0) return false;
            if (opt_.require_distinct && cnt < group_size_[g]) return false;
        }
        if (opt_.require_distinct) {
            std::size_t total = 0;
            for (std::uint64_t w : union_buf_) total += std::popcount(w);
            if (total < p_.cols()) return false;
        }
        return true;
    }

    bool place_row(std::size_t pr) {
        if (pr == p_.rows()) return place_col(0);
        for (std::size_t mr = 0; mr < m_.rows(); ++mr) {
            spend();
            if (opt_.require_distinct) {
                bool dup = false;
                for (std::size_t prev : chosen_rows_) {
                    if (m_.rows_equal(prev, mr)) {
                        dup = true;
                        break;
                    }
                }
                if (dup) continue;
            }
            const auto rw = m_.row_words(mr);
            for (std::size_t g = 0; g < ngroups_; ++g) {
                const std::uint64_t* src = cand(pr, g);
                std::uint64_t* dst = cand(pr + 1, g);
                const Cell want = p_.get(pr, group_rep_[g]);
                for (std::size_t i = 0; i < wpc_; ++i) {
                    dst[i] = want == Cell::Star ? src[i] : (want == Cell::One ? src[i] & rw[i] : src[i] & ~rw[i]);
                }
                if (want == Cell::Zero && (m_.cols() & 63)) {
                    dst[wpc_ - 1] &= ~std::uint64_t{0} << (64 - (m_.cols() & 63));
                }
            }
            if (feasible(pr + 1)) {
                chosen_rows_.push_back(mr);
                if (place_row(pr + 1)) return true;
                chosen_rows_.pop_back();
            }
        }
        return false;
    }

    bool place_col(std::size_t pc) {
        if (pc == p_.cols()) return true;
        const std::uint64_t* candw = cand(p_.rows(), col_group_[pc]);
        for (std::size_t w = 0; w < wpc_; ++w) {
            std::uint64_t bits = candw[w];
            while (bits) {
                const int lead = std::countl_zero(bits);
                const std::size_t mc = (w << 6) + static_cast<std::size_t>(lead);
                bits &= ~(std::uint64_t{1} << (63 - lead));
                spend();
                if (opt_.require_distinct) {
                    bool dup = false;
                    for (std::size_t prev : chosen_cols_) {
                        if (col_vectors_equal(prev, mc)) {
                            dup = true;
                            break;
                        }
                    }
                    if (dup) continue;
                }
                chosen_cols_.push_back(mc);
                if (place_col(pc + 1)) return true;
                chosen_cols_.pop_back();
            }
        }
        return false;
    }

    const BitMatrix& m_;
    const PartialMatrix& p_;
    PatternSearchOptions opt_;
    std::size_t wpc_;
    std::size_t wpr_;
    std::size_t ngroups_ = 0;
    std::vector<std::size_t> col_group_;
    std::vector<std::size_t> group_size_;
    std::vector<std::size_t> group_rep_;
    std::vector<std::uint64_t> cand_stack_;
    std::vector<std::uint64_t> union_buf_;
    std::vector<std::uint64_t> col_words_;
    std::vector<std::size_t> chosen_rows_;
    std::vector<std::size_t> chosen_cols_;
};

}  // namespace detail

// Searches for index sequences matching every non-* entry of the pattern.
// Deterministic: rows are assigned first, then columns, candidates in
// ascending index order, so the first embedding in that order is returned.
inline std::optional<Embedding> contains_pattern(const BitMatrix& m, const PartialMatrix& p,
                                                 PatternSearchOptions opt = {}) {
    return detail::PatternSearch(m, p, opt).run();
}

}  // namespace qslab
