#pragma once

#include <cstdint>

namespace rrgg {

using Seed = std::uint64_t;

// SplitMix64 finalizer. Used as a stateless counter-mode generator.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Keyed hash of (seed, a, b). Changing any input decorrelates the output.
constexpr std::uint64_t mix_seed(Seed seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b + 0x632BE59BD9B4E019ULL));
    return h;
}

// Top 53 bits to [0,1).
constexpr double to_unit_double(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Maps a 64-bit hash uniformly onto {0, ..., bound-1} (multiply-high).
constexpr std::uint64_t bounded(std::uint64_t x, std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * bound) >> 64);
}

}  // namespace rrgg
