#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qslab/domino.hpp"
#include "qslab/matrix.hpp"
#include "qslab/reduction.hpp"

namespace qslab {

// Total coloring of all subsets of {0..ground_size-1} of size <= arity.
// Colors are dense integers in first-seen order.
class SubsetColoring {
public:
    SubsetColoring(int ground_size, int arity) : ground_size_(ground_size), arity_(arity) {}

    int ground_size() const { return ground_size_; }
    int arity() const { return arity_; }
    int color_count() const { return next_color_; }

    // Assigns through the canonicalization; repeated raw values share a color.
    void assign_raw(const std::vector<int>& subset, const std::string& raw_color) {
        auto [it, fresh] = raw_to_dense_.emplace(raw_color, next_color_);
        if (fresh) ++next_color_;
        set_color(subset, it->second);
    }

    void set_color(const std::vector<int>& subset, int color) {
        validate_subset(subset);
        colors_[subset] = color;
        next_color_ = std::max(next_color_, color + 1);
    }

    int color_of(const std::vector<int>& subset) const {
        auto it = colors_.find(subset);
        if (it == colors_.end()) {
            throw domain_error("coloring is not total: missing a subset of size " +
                               std::to_string(subset.size()));
        }
        return it->second;
    }

    // Builds the coloring of every subset of size <= arity from a callback.
    template <typename Fn>
    static SubsetColoring from_function(int ground_size, int arity, Fn&& raw_color_of) {
        SubsetColoring out(ground_size, arity);
        std::vector<int> subset;
        auto recurse = [&](auto&& self, int next) -> void {
            out.assign_raw(subset, raw_color_of(subset));
            if (static_cast<int>(subset.size()) == arity) return;
            for (int v = next; v < ground_size; ++v) {
                subset.push_back(v);
                self(self, v + 1);
                subset.pop_back();
            }
        };
        recurse(recurse, 0);
        return out;
    }

    // Every subset of size <= arity must have a color.
    void validate_total() const {
        std::vector<int> subset;
        auto recurse = [&](auto&& self, int next) -> void {
            color_of(subset);
            if (static_cast<int>(subset.size()) == arity_) return;
            for (int v = next; v < ground_size_; ++v) {
                subset.push_back(v);
                self(self, v + 1);
                subset.pop_back();
            }
        };
        recurse(recurse, 0);
    }

private:
    void validate_subset(const std::vector<int>& subset) const {
        if (static_cast<int>(subset.size()) > arity_) throw domain_error("subset larger than the arity bound");
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (subset[i] < 0 || subset[i] >= ground_size_) throw domain_error("subset element out of range");
            if (i > 0 && subset[i] <= subset[i - 1]) throw domain_error("subset must be strictly increasing");
        }
    }

    int ground_size_;
    int arity_;
    int next_color_ = 0;
    std::map<std::vector<int>, int> colors_;
    std::map<std::string, int> raw_to_dense_;
};

struct HomogeneousSearchBudget {
    std::uint64_t nodes = 50'000'000;
};

// Finds a subset of the stated size on which the coloring is constant at
// every level up to the arity (one constant per level), or reports that none
// exists. Backtracking over increasing elements; exhaustive within budget.
inline std::optional<std::vector<int>> find_homogeneous(const SubsetColoring& coloring, int sigma,
                                                        HomogeneousSearchBudget budget = {}) {
    if (sigma < coloring.arity()) throw domain_error("target size must be at least the arity");
    coloring.validate_total();
    const int n = coloring.ground_size();
    const int arity = coloring.arity();
    std::vector<std::optional<int>> level_color(arity + 1);
    level_color[0] = coloring.color_of({});
    std::vector<int> chosen;
    std::uint64_t nodes = budget.nodes;

    auto search = [&](auto&& self, int next) -> bool {
        if (static_cast<int>(chosen.size()) == sigma) return true;
        for (int v = next; v < n; ++v) {
            if (nodes == 0) throw budget_error("homogeneous search budget exceeded");
            --nodes;
            if (n - v < sigma - static_cast<int>(chosen.size())) break;
            // colors of every new subset formed by adding v must match their level
            std::vector<std::pair<int, std::optional<int>>> touched;
            bool ok = true;
            std::vector<int> combo;
            auto enumerate = [&](auto&& enum_self, std::size_t idx) -> void {
                if (!ok) return;
                const int level = static_cast<int>(combo.size()) + 1;
                if (level <= arity) {
                    std::vector<int> probe = combo;
                    probe.push_back(v);
                    const int color = coloring.color_of(probe);
                    if (level_color[level]) {
                        if (*level_color[level] != color) {
                            ok = false;
                            return;
                        }
                    } else {
                        level_color[level] = color;
                        touched.push_back({level, std::nullopt});
                    }
                }
                if (static_cast<int>(combo.size()) + 1 >= arity) return;
                for (std::size_t i = idx; i < chosen.size(); ++i) {
                    combo.push_back(chosen[i]);
                    enum_self(enum_self, i + 1);
                    combo.pop_back();
                    if (!ok) return;
                }
            };
            enumerate(enumerate, 0);
            if (ok) {
                chosen.push_back(v);
                if (self(self, v + 1)) return true;
                chosen.pop_back();
            }
            for (auto& [level, previous] : touched) level_color[level] = previous;
        }
        return false;
    };
    if (search(search, 0)) return chosen;
    return std::nullopt;
}

// Order-preserving write of a short string into chosen coordinates of a wider
// domain, all other coordinates holding the fill bit.
struct EmbeddingPhi {
    int target_dim = 0;
    std::vector<int> positions;  // strictly increasing, |positions| = source dim
    bool fill = false;
};

inline Bits embed_phi(const Bits& x, const EmbeddingPhi& phi) {
    if (x.size() != phi.positions.size()) {
        throw domain_error("embedding size mismatch: input has " + std::to_string(x.size()) +
                           " bits, map expects " + std::to_string(phi.positions.size()));
    }
    Bits out(static_cast<std::size_t>(phi.target_dim));
    if (phi.fill) {
        for (int i = 0; i < phi.target_dim; ++i) out.set(static_cast<std::size_t>(i), true);
    }
    int prev = -1;
    for (std::size_t j = 0; j < phi.positions.size(); ++j) {
        const int p = phi.positions[j];
        if (p <= prev || p >= phi.target_dim) throw domain_error("embedding positions must be increasing and in range");
        prev = p;
        out.set(static_cast<std::size_t>(p), x.get(j));
    }
    return out;
}

struct ExtractResult {
    std::vector<int> chosen;             // the homogeneous coordinate set
    std::vector<BitMatrix> restricted;   // queries pulled back through the embedding
};

struct ExtractOptions {
    HomogeneousSearchBudget budget;
    // Optional verification hook: the combined queries must reproduce the
    // k-distance rule on the small domain.
    std::optional<TruthTable> combiner;
    int distance_k = 0;
};

// Pulls a query list over a wide domain back to a small domain along an
// embedding whose coordinate set makes the answer coloring homogeneous. The
// coloring of a coordinate subset concatenates, over all signatures of
// non-fill dominoes written into it (base-3 counting, digit order: fill-bar
// pair, 10, 01), the answers of every query. On a homogeneous set, pulled-back
// queries gain shuffle invariance for the filled domino on top of the given
// set; this is re-checked before returning.
inline ExtractResult extract_invariant_queries(const std::vector<BitMatrix>& queries, int small_dim,
                                               DominoSet delta, bool fill, ExtractOptions opt = {}) {
    if (queries.empty()) throw domain_error("need at least one query");
    const std::size_t wide_rows = queries.front().rows();
    int wide_dim = 0;
    while ((std::size_t{1} << wide_dim) < wide_rows) ++wide_dim;
    if ((std::size_t{1} << wide_dim) != wide_rows) throw domain_error("query domain must be a full binary cube");
    if (wide_dim > 14 || small_dim < 1 || small_dim > wide_dim) throw domain_error("dimensions out of range");

    std::vector<std::unordered_map<Bits, std::size_t, BitsHash>> row_index, col_index;
    for (const BitMatrix& q : queries) {
        if (q.rows() != wide_rows || q.cols() != wide_rows) throw domain_error("queries must share the cube domain");
        if (!q.has_labels()) throw domain_error("queries must be labelled");
        q.validate_labels();
        row_index.push_back(label_index_map(q.labels.rows));
        col_index.push_back(label_index_map(q.labels.cols));
        // the empty set holds for every matrix, no check needed
        if (delta.mask() != 0 && !is_shuffle_invariant(q, delta).ok()) {
            throw domain_error("query is not shuffle invariant for the given domino set before extraction");
        }
    }

    // the three dominoes that can appear on marked coordinates, fixed order
    const Domino fill_bar = make_domino(!fill, !fill);
    const std::array<Domino, 3> marked = {fill_bar, Domino::D10, Domino::D01};

    auto raw_color = [&](const std::vector<int>& subset) -> std::string {
        std::string color;
        const std::size_t s = subset.size();
        std::vector<int> digits(s, 0);
        while (true) {
            Bits u(static_cast<std::size_t>(wide_dim)), v(static_cast<std::size_t>(wide_dim));
            if (fill) {
                for (int i = 0; i < wide_dim; ++i) {
                    u.set(static_cast<std::size_t>(i), true);
                    v.set(static_cast<std::size_t>(i), true);
                }
            }
            for (std::size_t i = 0; i < s; ++i) {
                const Domino d = marked[digits[i]];
                const int code = static_cast<int>(d);
                u.set(static_cast<std::size_t>(subset[i]), (code >> 1) & 1);
                v.set(static_cast<std::size_t>(subset[i]), code & 1);
            }
            for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                const std::size_t r = row_index[qi].at(u);
                const std::size_t c = col_index[qi].at(v);
                color += queries[qi].get(r, c) ? '1' : '0';
            }
            // next signature, counting in base 3 from the last digit
            std::size_t pos = s;
            while (pos > 0 && digits[pos - 1] == 2) digits[--pos] = 0;
            if (pos == 0) break;
            ++digits[pos - 1];
        }
        return color;
    };

    SubsetColoring coloring = SubsetColoring::from_function(wide_dim, small_dim, raw_color);
    auto chosen = find_homogeneous(coloring, small_dim, opt.budget);
    if (!chosen) throw domain_error("no homogeneous set at this domain size");

    EmbeddingPhi phi{wide_dim, *chosen, fill};
    const std::size_t small_side = std::size_t{1} << small_dim;
    ExtractResult out;
    out.chosen = *chosen;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        BitMatrix r(small_side, small_side);
        r.labels.dim = static_cast<std::size_t>(small_dim);
        for (std::size_t i = 0; i < small_side; ++i) {
            r.labels.rows.push_back(Bits::of_integer(i, small_dim));
            r.labels.cols.push_back(Bits::of_integer(i, small_dim));
        }
        for (std::size_t i = 0; i < small_side; ++i) {
            const Bits u = embed_phi(r.labels.rows[i], phi);
            for (std::size_t j = 0; j < small_side; ++j) {
                const Bits v = embed_phi(r.labels.cols[j], phi);
                r.set(i, j, queries[qi].get(row_index[qi].at(u), col_index[qi].at(v)));
            }
        }
        out.restricted.push_back(std::move(r));
    }

    const DominoSet gained = delta.with(make_domino(fill, fill));
    for (const BitMatrix& r : out.restricted) {
        if (!is_shuffle_invariant(r, gained).ok()) {
            throw std::logic_error("restricted query lost the expected shuffle invariance");
        }
    }
    if (opt.combiner) {
        if (opt.combiner->arity != static_cast<int>(queries.size())) {
            throw domain_error("combiner arity must match the query count");
        }
        for (std::size_t i = 0; i < small_side; ++i) {
            for (std::size_t j = 0; j < small_side; ++j) {
                std::uint32_t answers = 0;
                for (std::size_t qi = 0; qi < out.restricted.size(); ++qi) {
                    answers |= static_cast<std::uint32_t>(out.restricted[qi].get(i, j)) << qi;
                }
                const bool want = std::popcount(i ^ j) == opt.distance_k;
                if (opt.combiner->eval(answers) != want) {
                    throw domain_error("combined restricted queries do not reproduce the distance rule");
                }
            }
        }
    }
    return out;
}

}  // namespace qslab
