#pragma once

#include <cstdint>

namespace cacaug {

/// SplitMix64 (Steele, Lea, Flood 2014). The constants below are the
/// published ones, so a seed reproduces the same stream in any language:
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   out = z ^ (z >> 31)
/// Integers in [0, n) use rejection on the top partial block followed by
/// `x % n`; reals in [0, 1) use the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    /// Uniform integer in [lo, hi].
    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(uniform(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Seed of the `index`-th independent sub-stream derived from `seed`.
    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
        return mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL));
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

}  // namespace cacaug
