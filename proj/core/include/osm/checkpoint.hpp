#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "osm/learning.hpp"

namespace osm {

inline constexpr int kCheckpointFormatVersion = 1;

// Line-oriented text checkpoint:
//
//   osm-checkpoint
//   format_version 1
//   n_items <N>
//   K <K>
//   seed <seed>            (optional)
//   nu <value>
//   u <u_0> ... <u_{N-1}>
//   W
//   <W_00> ... <W_0,K-1>   (N rows; empty lines when K = 0)
//
// Doubles are written in shortest round-trip form, so write -> read -> write
// reproduces the bytes.
struct Checkpoint {
  CFParams params;
  std::optional<std::uint64_t> seed;
};

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace osm
