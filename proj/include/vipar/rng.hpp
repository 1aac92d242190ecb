#pragma once

#include <cstdint>

namespace vipar {

/// SplitMix64: tiny, fully portable 64-bit generator (Steele, Lea, Flood).
/// Used everywhere randomness is needed so that identical seeds give
/// identical streams on every platform; std::random distributions are
/// implementation-defined and are deliberately avoided.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Independent substream k of a master seed. Substream k starts from
/// mix64(seed + (k+1) * 0x9E3779B97F4A7C15); the data generator assigns one
/// substream per simulated variable so that draws for one variable do not
/// shift when another variable's model changes.
SplitMix64 substream(std::uint64_t seed, std::uint64_t k);

} // namespace vipar
