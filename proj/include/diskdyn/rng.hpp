#pragma once

#include <cstdint>

namespace diskdyn::rng {

/// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream: the value at (seed, index, dim) never depends on
/// evaluation order, so parallel and serial sampling agree bit for bit.
constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t index, std::uint64_t dim) {
    return mix64(mix64(mix64(seed) ^ index) ^ (0xd1342543de82ef95ULL * dim + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t dim) {
    return static_cast<double>(keyed(seed, index, dim) >> 11) * 0x1.0p-53;
}

} // namespace diskdyn::rng
