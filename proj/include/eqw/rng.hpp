// rng.hpp
// Reproducible random streams: one master seed, one independent engine per
// work item (trajectory), derived from (master_seed, index) only.

#pragma once

#include <cstdint>
#include <random>

namespace eqw {

using Rng = std::mt19937_64;

/// Engine for work item `index` under `master_seed`. The derivation goes
/// through std::seed_seq, so it does not depend on scheduling.
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace eqw
