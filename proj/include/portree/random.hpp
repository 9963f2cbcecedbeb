#pragma once

#include <cstdint>
#include <random>

namespace portree {

/// The engine every simulation draws from.
using Rng = std::mt19937_64;

/**
 * @brief Independent stream for replicate @p stream of a run seeded with @p master_seed.
 *
 * Both words are scrambled with SplitMix64 and fed through std::seed_seq, whose
 * algorithm is fixed by the standard, so streams are identical on every platform
 * and independent of how replicates are scheduled across threads.
 */
[[nodiscard]] Rng make_stream(std::uint64_t master_seed, std::uint64_t stream);

/// Uniform integer in [0, bound). bound must be positive.
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Exp(rate) by inversion.
[[nodiscard]] double exponential(Rng& rng, double rate);

}  // namespace portree
