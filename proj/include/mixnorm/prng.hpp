#pragma once

#include <cstdint>

// Self-contained pseudo-random generator with a pinned algorithm so that
// every seeded run reproduces bit-identical streams on any platform and
// compiler.  splitmix64 expands a 64-bit seed into xoshiro256** state;
// doubles are produced by the usual 53-bit mantissa mapping.

namespace mixnorm {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

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

    // Uniform in [0,1) with 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [0, bound) by rejection-free modulo; bound is tiny
    // in all callers, so the modulo bias (< bound / 2^64) is irrelevant for
    // test-input generation but the result is still fully deterministic.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Derives the per-trial seed used by the probe runner: trials must be
// independent of thread scheduling, so each trial reseeds from (seed, index).
inline std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t index) {
    std::uint64_t s = suite_seed ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL);
    return splitmix64(s);
}

}  // namespace mixnorm
