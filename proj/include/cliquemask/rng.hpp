// rng.hpp — counter-based seedable random streams.
//
// Each stream is identified by (master_seed, stream_index); equal identifiers
// reproduce the same sequence, distinct indices give statistically independent
// streams. The generator is a SplitMix64-style counter construction: the n-th
// output is an avalanche mix of key + n*GOLDEN, so streams are cheap to create
// and never share state.
#pragma once

#include <cstdint>

namespace cliquemask {

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {
        key_ = mix(mix(master_seed ^ 0x6a09e667f3bcc909ull) + stream_index);
        state_ = key_;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0,1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound), unbiased via rejection. bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Fair +1 / -1.
    int next_sign() {
        return (next_u64() >> 63) ? 1 : -1;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t key_;
    std::uint64_t state_;
};

} // namespace cliquemask
