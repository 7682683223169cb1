#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qslab/bits.hpp"
#include "qslab/error.hpp"

namespace qslab {

// Optional bitstring names for the rows and columns of a matrix. When
// present, both sides use one shared bit length.
struct Labels {
    std::vector<Bits> rows;
    std::vector<Bits> cols;
    std::size_t dim = 0;

    bool present() const { return !rows.empty() || !cols.empty(); }
};

// Dense 0/1 matrix, row-major, bit packed. All indices are 0-based; the
// 1-based conventions common in the literature map by subtracting 1.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (63 - (c & 63))) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (63 - (c & 63));
        if (v) {
            data_[r * wpr_ + (c >> 6)] |= mask;
        } else {
            data_[r * wpr_ + (c >> 6)] &= ~mask;
        }
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {data_.data() + r * wpr_, wpr_};
    }

    std::size_t words_per_row() const { return wpr_; }

    Bits row(std::size_t r) const {
        Bits b(cols_);
        for (std::size_t c = 0; c < cols_; ++c) b.set(c, get(r, c));
        return b;
    }

    Bits column(std::size_t c) const {
        Bits b(rows_);
        for (std::size_t r = 0; r < rows_; ++r) b.set(r, get(r, c));
        return b;
    }

    bool rows_equal(std::size_t r1, std::size_t r2) const {
        const auto a = row_words(r1), b = row_words(r2);
        for (std::size_t i = 0; i < wpr_; ++i) {
            if (a[i] != b[i]) return false;
        }
        return true;
    }

    Labels labels;

    bool has_labels() const { return labels.present(); }

    void validate_labels() const {
        if (!labels.present()) return;
        if (labels.rows.size() != rows_ || labels.cols.size() != cols_) {
            throw domain_error("label counts do not match matrix shape");
        }
        for (const Bits& l : labels.rows) {
            if (l.size() != labels.dim) throw domain_error("row label of wrong bit length");
        }
        for (const Bits& l : labels.cols) {
            if (l.size() != labels.dim) throw domain_error("column label of wrong bit length");
        }
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               a.labels.rows == b.labels.rows && a.labels.cols == b.labels.cols;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

enum class Cell : std::uint8_t { Zero = 0, One = 1, Star = 2 };

inline char cell_char(Cell c) { return c == Cell::Zero ? '0' : (c == Cell::One ? '1' : '*'); }

// {0,1,*} matrix for gadgets and pattern containment.
class PartialMatrix {
public:
    PartialMatrix() = default;

    PartialMatrix(std::size_t rows, std::size_t cols, Cell fill = Cell::Star)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Cell get(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Cell v) { data_[r * cols_ + c] = v; }

    bool total() const {
        for (Cell c : data_) {
            if (c == Cell::Star) return false;
        }
        return true;
    }

    Labels labels;
    bool has_labels() const { return labels.present(); }

    friend bool operator==(const PartialMatrix& a, const PartialMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               a.labels.rows == b.labels.rows && a.labels.cols == b.labels.cols;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cell> data_;
};

inline PartialMatrix to_partial(const BitMatrix& m) {
    PartialMatrix p(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            p.set(r, c, m.get(r, c) ? Cell::One : Cell::Zero);
        }
    }
    p.labels = m.labels;
    return p;
}

// Requires a total matrix.
inline BitMatrix to_bitmatrix(const PartialMatrix& p) {
    BitMatrix m(p.rows(), p.cols());
    for (std::size_t r = 0; r < p.rows(); ++r) {
        for (std::size_t c = 0; c < p.cols(); ++c) {
            const Cell v = p.get(r, c);
            if (v == Cell::Star) throw domain_error("matrix has a * entry and is not total");
            m.set(r, c, v == Cell::One);
        }
    }
    m.labels = p.labels;
    return m;
}

inline std::unordered_map<Bits, std::size_t, BitsHash> label_index_map(const std::vector<Bits>& labels) {
    std::unordered_map<Bits, std::size_t, BitsHash> map;
    map.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!map.emplace(labels[i], i).second) {
            throw domain_error("duplicate label " + labels[i].to_string());
        }
    }
    return map;
}

// Text format, round-trips exactly:
//   rows cols [d]     -- d present iff labels follow the entry block
//   <rows lines of 0/1/* characters, cols per line>
//   <rows row-label lines of d bits, then cols column-label lines>
inline void write_matrix_text(std::ostream& os, const PartialMatrix& m) {
    os << m.rows() << ' ' << m.cols();
    if (m.has_labels()) os << ' ' << m.labels.dim;
    os << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << cell_char(m.get(r, c));
        os << '\n';
    }
    if (m.has_labels()) {
        for (const Bits& l : m.labels.rows) os << l.to_string() << '\n';
        for (const Bits& l : m.labels.cols) os << l.to_string() << '\n';
    }
}

inline void write_matrix_text(std::ostream& os, const BitMatrix& m) { write_matrix_text(os, to_partial(m)); }

inline PartialMatrix read_partial_matrix_text(std::istream& is) {
    std::string header;
    while (std::getline(is, header)) {
        if (!header.empty()) break;
    }
    std::istringstream hs(header);
    std::size_t rows = 0, cols = 0;
    if (!(hs >> rows >> cols)) throw domain_error("matrix header must be 'rows cols [d]'");
    std::size_t dim = 0;
    const bool labelled = static_cast<bool>(hs >> dim);

    PartialMatrix m(rows, cols);
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(is, line)) throw domain_error("unexpected end of matrix entries");
        if (line.size() != cols) {
            throw domain_error("entry row " + std::to_string(r) + " has length " +
                               std::to_string(line.size()) + ", expected " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            switch (line[c]) {
                case '0': m.set(r, c, Cell::Zero); break;
                case '1': m.set(r, c, Cell::One); break;
                case '*': m.set(r, c, Cell::Star); break;
                default: throw domain_error("invalid entry character in matrix text");
            }
        }
    }
    if (labelled) {
        m.labels.dim = dim;
        auto read_label = [&](const char* side) {
            if (!std::getline(is, line)) throw domain_error(std::string("missing ") + side + " label line");
            if (line.size() != dim) throw domain_error(std::string(side) + " label has wrong length");
            return Bits::from_string(line);
        };
        for (std::size_t r = 0; r < rows; ++r) m.labels.rows.push_back(read_label("row"));
        for (std::size_t c = 0; c < cols; ++c) m.labels.cols.push_back(read_label("column"));
    }
    return m;
}

inline BitMatrix read_bitmatrix_text(std::istream& is) { return to_bitmatrix(read_partial_matrix_text(is)); }

}  // namespace qslab
