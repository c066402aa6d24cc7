#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vecdep {

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (seed, stream); gives independent-looking seeds
/// for per-row / per-replicate sub-streams so parallel work is reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) { return Rng(derive_seed(seed, stream)); }

/// Uniform draw strictly inside (0, 1) with 53 random bits.
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Unit exponential via inversion.
inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

}  // namespace vecdep
