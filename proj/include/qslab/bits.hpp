#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qslab/error.hpp"

namespace qslab {

// Fixed-length bit string. Position 0 is the leftmost character of the
// textual form. Bits are packed MSB-first inside each 64-bit word so that
// word-wise unsigned comparison coincides with lexicographic order of the
// textual form.
class Bits {
public:
    Bits() = default;

    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bits from_string(std::string_view s) {
        Bits b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                b.set(i, true);
            } else if (s[i] != '0') {
                throw domain_error("bit string may contain only 0/1, got '" + std::string(1, s[i]) + "'");
            }
        }
        return b;
    }

    // Big-endian numeral: bit 0 holds the most significant binary digit.
    static Bits of_integer(std::uint64_t value, std::size_t width) {
        Bits b(width);
        for (std::size_t i = 0; i < width; ++i) {
            b.set(width - 1 - i, (value >> i) & 1u);
        }
        return b;
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (63 - (i & 63))) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
        if (v) {
            w_[i >> 6] |= mask;
        } else {
            w_[i >> 6] &= ~mask;
        }
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    Bits operator^(const Bits& o) const {
        require_same_size(o, "xor");
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] ^ o.w_[i];
        return r;
    }

    Bits operator&(const Bits& o) const {
        require_same_size(o, "and");
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }

    Bits operator~() const {
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.clear_tail();
        return r;
    }

    friend bool operator==(const Bits& a, const Bits& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

    // Lexicographic on the textual form; shorter strings order first on ties.
    friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
        const std::size_t common = std::min(a.w_.size(), b.w_.size());
        for (std::size_t i = 0; i < common; ++i) {
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a.n_ <=> b.n_;
    }

    // Substring on an increasing list of positions.
    Bits extract(std::span<const int> positions) const {
        Bits r(positions.size());
        for (std::size_t j = 0; j < positions.size(); ++j) {
            r.set(j, get(static_cast<std::size_t>(positions[j])));
        }
        return r;
    }

    Bits prefix(std::size_t len) const {
        Bits r(len);
        for (std::size_t i = 0; i < len; ++i) r.set(i, get(i));
        return r;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i) {
            if (get(i)) s[i] = '1';
        }
        return s;
    }

    std::span<const std::uint64_t> words() const { return w_; }

    std::uint64_t fingerprint() const {
        std::uint64_t h = 1469598103934665603ull ^ (n_ * 0x9e3779b97f4a7c15ull);
        for (std::uint64_t w : w_) {
            h ^= w;
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return h;
    }

private:
    void require_same_size(const Bits& o, const char* op) const {
        if (n_ != o.n_) {
            throw domain_error(std::string("bit length mismatch in ") + op + ": " + std::to_string(n_) +
                               " vs " + std::to_string(o.n_));
        }
    }

    void clear_tail() {
        if (n_ & 63) {
            w_.back() &= ~std::uint64_t{0} << (64 - (n_ & 63));
        }
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

inline std::size_t hamming(const Bits& a, const Bits& b) { return (a ^ b).count(); }

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return static_cast<std::size_t>(b.fingerprint()); }
};

}  // namespace qslab
