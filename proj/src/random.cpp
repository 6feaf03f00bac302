#include "bwpuzzle/random.hpp"

#include <limits>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below: bound must be positive");
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
    for (;;) {
        std::uint64_t x = rng();
        if (x <= limit) return x % bound;
    }
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix(splitmix(splitmix(master) ^ a) ^ b);
}

}  // namespace bwpuzzle
