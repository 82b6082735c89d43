#pragma once

#include <cstdint>

namespace qbaf {

// Small deterministic generator (splitmix64). Used instead of <random>
// engines and distributions so that sampled studies are reproducible
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1).
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi].
    double range(double lo, double hi) { return lo + (hi - lo) * real01(); }

private:
    std::uint64_t state_;
};

// Independent stream for one sample of a seeded study; streams for distinct
// indices never overlap in practice.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ (index * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL));
    return Rng(mixer.next_u64());
}

} // namespace qbaf
