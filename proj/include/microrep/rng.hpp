#pragma once

#include <cstdint>
#include <vector>

namespace microrep {

/// Deterministic 64-bit PRNG (SplitMix64, Steele et al. 2014).
///
/// Every seeded operation in the library draws from this generator so that
/// identical seeds reproduce identical results across platforms and builds.
/// The state update is x += 0x9E3779B97F4A7C15 followed by two xor-shift
/// multiplies; the full sequence is pinned by the unit tests.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Uniform integer in [0, bound) via Lemire's multiply-shift reduction.
    uint64_t next_below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<__uint128_t>(next()) * bound) >> 64);
    }

private:
    uint64_t state_;
};

/// Stream-splitting helper: derives an independent seed from (seed, index)
/// pairs, e.g. one PRNG per epoch or per embedding row.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return rng.next();
}

/// In-place Fisher-Yates shuffle driven by the given generator.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    if (items.size() < 2) return;
    for (size_t i = items.size() - 1; i > 0; --i) {
        size_t j = static_cast<size_t>(rng.next_below(i + 1));
        std::swap(items[i], items[j]);
    }
}

} // namespace microrep
