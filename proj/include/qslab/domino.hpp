#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qslab/matrix.hpp"

namespace qslab {

// A vertical bit pair (x_i over y_i) at one coordinate of an input pair.
// Encoded as (x_bit << 1) | y_bit, so 00 -> 0, 01 -> 1, 10 -> 2, 11 -> 3.
enum class Domino : std::uint8_t { D00 = 0, D01 = 1, D10 = 2, D11 = 3 };

inline Domino make_domino(bool x_bit, bool y_bit) {
    return static_cast<Domino>((static_cast<int>(x_bit) << 1) | static_cast<int>(y_bit));
}

inline std::string domino_name(Domino d) {
    static const char* names[4] = {"00", "01", "10", "11"};
    return names[static_cast<int>(d)];
}

// Subset of the four dominoes, one bit per code.
class DominoSet {
public:
    constexpr DominoSet() = default;
    constexpr explicit DominoSet(std::uint8_t mask) : mask_(mask & 0xF) {}

    static constexpr DominoSet none() { return DominoSet(0); }
    static constexpr DominoSet all() { return DominoSet(0xF); }
    static DominoSet of(std::initializer_list<Domino> ds) {
        std::uint8_t m = 0;
        for (Domino d : ds) m |= std::uint8_t(1u << static_cast<int>(d));
        return DominoSet(m);
    }

    bool contains(Domino d) const { return (mask_ >> static_cast<int>(d)) & 1u; }
    DominoSet complement() const { return DominoSet(static_cast<std::uint8_t>(~mask_)); }
    bool subset_of(DominoSet o) const { return (mask_ & ~o.mask_) == 0; }
    std::uint8_t mask() const { return mask_; }

    DominoSet with(Domino d) const { return DominoSet(static_cast<std::uint8_t>(mask_ | (1u << static_cast<int>(d)))); }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < 4; ++i) {
            if ((mask_ >> i) & 1u) {
                if (!s.empty()) s += ',';
                s += domino_name(static_cast<Domino>(i));
            }
        }
        return s.empty() ? "none" : s;
    }

private:
    std::uint8_t mask_ = 0;
};

// Counts of the four dominoes of an input pair; entries sum to the dimension.
struct Tally {
    std::array<int, 4> count = {0, 0, 0, 0};

    int& operator[](Domino d) { return count[static_cast<int>(d)]; }
    int operator[](Domino d) const { return count[static_cast<int>(d)]; }
    friend bool operator==(const Tally&, const Tally&) = default;

    std::string to_string() const {
        return "[t00=" + std::to_string(count[0]) + ",t01=" + std::to_string(count[1]) +
               ",t10=" + std::to_string(count[2]) + ",t11=" + std::to_string(count[3]) + "]";
    }
};

// Ordered subsequence of the dominoes lying in a chosen set, plus the full tally.
struct DeltaType {
    std::vector<Domino> signature;
    Tally tally;

    friend bool operator==(const DeltaType&, const DeltaType&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < signature.size(); ++i) {
            if (i) s += ',';
            s += domino_name(signature[i]);
        }
        return s + ") " + tally.to_string();
    }
};

inline DeltaType delta_type(const Bits& x, const Bits& y, DominoSet delta) {
    if (x.size() != y.size()) {
        throw domain_error("delta_type needs strings of equal length, got " + std::to_string(x.size()) +
                           " and " + std::to_string(y.size()));
    }
    DeltaType t;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Domino d = make_domino(x.get(i), y.get(i));
        ++t.tally[d];
        if (delta.contains(d)) t.signature.push_back(d);
    }
    return t;
}

namespace detail {

// Hashable flat encoding of a complement type.
inline std::string type_key(const DeltaType& t) {
    std::string key;
    key.reserve(t.signature.size() + 12);
    for (Domino d : t.signature) key += static_cast<char>('a' + static_cast<int>(d));
    key += '|';
    for (int c : t.tally.count) {
        key += std::to_string(c);
        key += ',';
    }
    return key;
}

}  // namespace detail

struct InvarianceViolation {
    Bits x, y, u, v;  // equal complement type, different matrix values
};

struct InvarianceResult {
    std::optional<InvarianceViolation> violation;
    bool ok() const { return !violation.has_value(); }
};

// Whether the matrix value depends only on the complement type, i.e. is
// unchanged by swaps of adjacent dominoes involving the given set. Pairs are
// scanned in label order and grouped by complement-type key; the first
// conflicting pair, together with the earliest pair of its group, is reported.
inline InvarianceResult is_shuffle_invariant(const BitMatrix& q, DominoSet delta) {
    if (!q.has_labels()) throw domain_error("shuffle invariance needs a fully labelled matrix");
    q.validate_labels();
    if (q.labels.dim > 8) throw domain_error("shuffle invariance check supports label dimension <= 8");

    std::vector<std::size_t> row_order(q.rows()), col_order(q.cols());
    std::iota(row_order.begin(), row_order.end(), 0u);
    std::iota(col_order.begin(), col_order.end(), 0u);
    std::sort(row_order.begin(), row_order.end(),
              [&](std::size_t a, std::size_t b) { return q.labels.rows[a] < q.labels.rows[b]; });
    std::sort(col_order.begin(), col_order.end(),
              [&](std::size_t a, std::size_t b) { return q.labels.cols[a] < q.labels.cols[b]; });

    const DominoSet comp = delta.complement();
    struct Seen {
        std::size_t row, col;
        bool value;
    };
    std::unordered_map<std::string, Seen> seen;
    seen.reserve(q.rows() * q.cols());
    for (std::size_t r : row_order) {
        for (std::size_t c : col_order) {
            const DeltaType t = delta_type(q.labels.rows[r], q.labels.cols[c], comp);
            const bool value = q.get(r, c);
            auto [it, fresh] = seen.emplace(detail::type_key(t), Seen{r, c, value});
            if (!fresh && it->second.value != value) {
                return {InvarianceViolation{q.labels.rows[it->second.row], q.labels.cols[it->second.col],
                                            q.labels.rows[r], q.labels.cols[c]}};
            }
        }
    }
    return {};
}

struct TwoTallyReport {
    bool entries_match_distance = true;  // every non-* entry equals the k-distance rule
    bool tallies_consistent = true;      // equal entries share one tally per value
    std::string violation;               // first failure, row-major scan order

    bool ok() const { return entries_match_distance && tallies_consistent; }
};

// Checks the two defining conditions of a two-tally matrix at distance k.
inline TwoTallyReport verify_two_tally(const PartialMatrix& m, int k) {
    if (!m.has_labels()) throw domain_error("two-tally verification needs labels");
    if (m.labels.rows.size() != m.rows() || m.labels.cols.size() != m.cols()) {
        throw domain_error("two-tally verification needs full labels");
    }

    TwoTallyReport report;
    std::optional<Tally> one_tally, zero_tally;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Cell cell = m.get(r, c);
            if (cell == Cell::Star) continue;
            const Bits& x = m.labels.rows[r];
            const Bits& y = m.labels.cols[c];
            const bool distance_hit = hamming(x, y) == static_cast<std::size_t>(k);
            if ((cell == Cell::One) != distance_hit) {
                if (report.ok()) {
                    report.violation = "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                       std::string(1, cell_char(cell)) + " disagrees with distance " +
                                       std::to_string(hamming(x, y)) + " of its labels";
                }
                report.entries_match_distance = false;
                continue;
            }
            const Tally tally = delta_type(x, y, DominoSet::none()).tally;
            std::optional<Tally>& slot = cell == Cell::One ? one_tally : zero_tally;
            if (!slot) {
                slot = tally;
            } else if (!(*slot == tally)) {
                if (report.ok()) {
                    report.violation = "entry (" + std::to_string(r) + "," + std::to_string(c) + ") has tally " +
                                       tally.to_string() + " but earlier " + std::string(1, cell_char(cell)) +
                                       "-entries have " + slot->to_string();
                }
                report.tallies_consistent = false;
            }
        }
    }
    return report;
}

}  // namespace qslab
