#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "qslab/bits.hpp"

namespace qslab {

// splitmix64; used to derive independent sub-seeds from one run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic stream of derived seeds.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t next() { return mix_seed(seed_, counter_++); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

inline Bits random_bits(std::mt19937_64& rng, std::size_t n) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, rng() & 1u);
    return b;
}

// n distinct strings of dimension d.
inline std::vector<Bits> random_string_set(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::vector<Bits> out;
    std::unordered_set<Bits, BitsHash> seen;
    out.reserve(n);
    while (out.size() < n) {
        Bits c = random_bits(rng, d);
        if (seen.insert(c).second) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace qslab
