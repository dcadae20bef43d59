// rng.hpp
//
// SplitMix64 (Steele, Lea, Flood 2014; Vigna's public-domain reference).
// Output i is a fixed 64-bit mix of seed + (i+1)*0x9E3779B97F4A7C15, so the
// stream is a pure function of (seed, index): the same seed reproduces the
// same points on any platform, and prefixes are stable by construction.

#pragma once

#include <cstdint>

namespace paircorr {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1): top 53 bits scaled by 2^-53.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace paircorr
