#pragma once

#include "gic/big_index.hpp"

#include <cstdint>

namespace gic {

// Deterministic, platform-independent generators. All randomized operations
// in the library take one of these explicitly; there is no global RNG state.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    // xoshiro256**
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    // Uniform in [0, bound) by rejection on the top bits.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ULL >> __builtin_clzll((bound - 1) | 1);
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

    // Uniform BigIndex in [0, bound), bound > 0.
    BigIndex below_big(const BigIndex& bound) {
        if (bound <= 1) return 0;
        std::uint64_t bits = ceil_log2(bound);
        for (;;) {
            BigIndex v = random_bits(bits);
            if (v < bound) return v;
        }
    }

    BigIndex random_bits(std::uint64_t bits) {
        BigIndex v = 0;
        std::uint64_t full = bits / 64, rest = bits % 64;
        for (std::uint64_t i = 0; i < full; ++i) v = (v << 64) | next_u64();
        if (rest) v = (v << rest) | (next_u64() >> (64 - rest));
        return v;
    }

    // Independent child stream, for per-trial determinism.
    Rng fork(std::uint64_t tag) {
        SplitMix64 sm(next_u64() ^ (0x632be59bd9b4e019ULL * (tag + 1)));
        return Rng(sm.next());
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace gic
