#pragma once

#include <cstdint>

namespace treelab {

// SplitMix64: counter-based 64-bit generator. Streams derived from distinct
// seeds are independent, and output is bit-identical across platforms, which
// keeps datasets and experiment tables reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

private:
    std::uint64_t state_;
};

// Stateless finalizer used to mix seed material.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for (base, n, replicate): lets any subset of an experiment grid be
// regenerated without running the rest.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n,
                                 std::uint64_t replicate) {
    std::uint64_t s = mix64(base ^ 0xA0761D6478BD642FULL);
    s = mix64(s ^ n);
    s = mix64(s ^ (replicate + 0x1D8E4E27C47D124FULL));
    return s;
}

}  // namespace treelab
