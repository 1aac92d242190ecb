#include "vipar/rng.hpp"

namespace vipar {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SplitMix64 substream(std::uint64_t seed, std::uint64_t k) {
    return SplitMix64(mix64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL));
}

} // namespace vipar
