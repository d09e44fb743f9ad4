#pragma once

#include <cstdint>

namespace dhlab {

/// Stateless counter-based generator (SplitMix64 finalizer).  Sample i of a
/// run keyed by `seed` is hash(seed, i): blocks of samples can be produced on
/// any thread in any order and still yield identical streams.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of the counter hash.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_hash(seed, index) >> 11) * 0x1.0p-53;
}

} // namespace dhlab
