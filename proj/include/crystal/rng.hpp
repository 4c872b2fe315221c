#pragma once

#include <cstdint>
#include <random>

namespace crystal {

using Rng = std::mt19937_64;

/// Independent stream for (master seed, stream index). The engine is seeded
/// through std::seed_seq with the four 32-bit halves
/// {seed_lo, seed_hi, index_lo, index_hi}, so the mapping is fixed by the
/// standard and identical on every conforming platform.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace crystal
