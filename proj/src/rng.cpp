#include "crystal/rng.hpp"

namespace crystal {

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    return Rng(seq);
}

}  // namespace crystal
