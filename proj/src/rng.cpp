#include "eqw/rng.hpp"

namespace eqw {

Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      0x6a09e667u};
    return Rng(seq);
}

}  // namespace eqw
