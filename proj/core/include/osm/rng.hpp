#pragma once

#include <cstdint>
#include <random>

namespace osm {

using Rng = std::mt19937_64;

// Independent stream `stream` derived from a base seed. Streams with
// different ids do not share state, so per-chain results do not depend on
// scheduling.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x6f736d31u};
  return Rng(seq);
}

}  // namespace osm
