#pragma once

#include <cstdint>
#include <random>

namespace torimatch {

/// SplitMix64 finalizer. Used to derive well-separated seeds from a master
/// seed and an index without constructing intermediate engines.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + mix64(index + 1));
}

/// Uniform double in [0,1) with 53 random bits. std::uniform_real_distribution
/// is not bit-stable across standard libraries; this is, which keeps seeded
/// runs reproducible everywhere.
inline double uniform_unit(std::mt19937_64 &rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace torimatch
