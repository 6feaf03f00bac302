#pragma once

#include <cstdint>
#include <random>

namespace bwpuzzle {

// mt19937_64's output sequence is fixed by the standard; the distributions
// below are implemented here so that seeded runs agree across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// SplitMix64-style mixing of a master seed with stream coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace bwpuzzle
