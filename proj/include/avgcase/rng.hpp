#pragma once

/**
 * @file rng.hpp
 * @brief Portable seeded randomness.
 *
 * The generator is SplitMix64 (Steele, Lea, Flood 2014):
 *
 *     state += 0x9E3779B97F4A7C15
 *     z = state
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *     return z ^ (z >> 31)
 *
 * Trial i of a run with master seed m draws from its own stream seeded with
 * substream_seed(m, i) = mix64(m ^ mix64(i + 0x9E3779B97F4A7C15)), where mix64
 * is the finalizer above applied to its argument. Bounded draws use plain
 * rejection sampling, so every value depends only on 64-bit integer
 * arithmetic and is identical on every platform. std:: distributions are
 * never used: their algorithms are implementation-defined.
 */

#include <cstdint>
#include <limits>

namespace avgcase {

struct Seed {
    std::uint64_t master = 0;
};

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) return r % bound;
        }
    }

    constexpr bool coin() { return ((*this)() >> 63U) != 0; }

private:
    std::uint64_t state_;
};

inline SplitMix64 trial_rng(Seed seed, std::uint64_t trial) {
    return SplitMix64(substream_seed(seed.master, trial));
}

}  // namespace avgcase
