#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qslab/bits.hpp"

namespace qslab {

struct TranscriptEntry {
    std::string oracle;  // which oracle answered, e.g. "EQ"
    std::string detail;  // short human-readable description of the round
    int answer = 0;
    std::uint64_t alice_digest = 0;  // fingerprints of the two submitted arguments
    std::uint64_t bob_digest = 0;
};

// Per-run log of oracle queries, in order.
struct Transcript {
    std::vector<TranscriptEntry> entries;

    int total() const { return static_cast<int>(entries.size()); }

    int count(std::string_view oracle) const {
        int c = 0;
        for (const auto& e : entries) {
            if (e.oracle == oracle) ++c;
        }
        return c;
    }
};

// Equality-oracle channel. Protocol drivers never compare private inputs
// directly; each party submits its own argument here, and an absent argument
// means that party is not being simulated in this run. All control flow
// downstream of a query may depend only on the returned answers.
class EqPort {
public:
    virtual ~EqPort() = default;
    virtual int query(std::string_view oracle, const std::optional<Bits>& alice,
                      const std::optional<Bits>& bob, std::string detail) = 0;
};

// Computes real answers and records the transcript. Needs both parties.
class LiveEqPort final : public EqPort {
public:
    explicit LiveEqPort(Transcript& transcript) : transcript_(&transcript) {}

    int query(std::string_view oracle, const std::optional<Bits>& alice, const std::optional<Bits>& bob,
              std::string detail) override {
        if (!alice || !bob) throw std::logic_error("live oracle requires both arguments");
        const int answer = *alice == *bob ? 1 : 0;
        transcript_->entries.push_back(
            {std::string(oracle), std::move(detail), answer, alice->fingerprint(), bob->fingerprint()});
        return answer;
    }

private:
    Transcript* transcript_;
};

// Answers live queries but records nothing beyond the count. Used by sweeps
// and exhaustive counting experiments where transcripts would dominate cost.
class CountingEqPort final : public EqPort {
public:
    int query(std::string_view, const std::optional<Bits>& alice, const std::optional<Bits>& bob,
              std::string) override {
        if (!alice || !bob) throw std::logic_error("live oracle requires both arguments");
        ++count_;
        return *alice == *bob ? 1 : 0;
    }

    int count() const { return count_; }

private:
    int count_ = 0;
};

// Feeds back a recorded transcript. Drives a re-run from a single party's
// view: whichever argument is present must reproduce the recorded one, which
// checks that the party's queries are a function of its view plus answers.
class ReplayEqPort final : public EqPort {
public:
    explicit ReplayEqPort(const Transcript& transcript) : transcript_(&transcript) {}

    int query(std::string_view oracle, const std::optional<Bits>& alice, const std::optional<Bits>& bob,
              std::string) override {
        if (next_ >= transcript_->entries.size()) throw std::logic_error("replay ran past the recorded transcript");
        const TranscriptEntry& e = transcript_->entries[next_++];
        if (e.oracle != oracle) throw std::logic_error("replay diverged: oracle tag mismatch");
        if (alice && alice->fingerprint() != e.alice_digest) throw std::logic_error("replay diverged: alice argument");
        if (bob && bob->fingerprint() != e.bob_digest) throw std::logic_error("replay diverged: bob argument");
        return e.answer;
    }

    bool exhausted() const { return next_ == transcript_->entries.size(); }

private:
    const Transcript* transcript_;
    std::size_t next_ = 0;
};

}  // namespace qslab
