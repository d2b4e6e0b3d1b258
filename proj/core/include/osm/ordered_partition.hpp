#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace osm {

using Object = std::uint32_t;
using Block = std::vector<Object>;

// An ordered set partition of {0, ..., n-1}. Block 0 is ranked highest.
// Blocks are kept sorted so two partitions compare equal iff they describe
// the same grouping and ordering.
class OrderedPartition {
 public:
  OrderedPartition() = default;

  // Throws std::invalid_argument unless the blocks are non-empty, pairwise
  // disjoint and cover exactly {0, ..., n_objects-1}.
  OrderedPartition(std::vector<Block> blocks, std::size_t n_objects);

  static OrderedPartition all_singletons(std::size_t n_objects);
  static OrderedPartition single_block(std::size_t n_objects);

  std::size_t n_objects() const { return n_objects_; }
  std::size_t n_blocks() const { return blocks_.size(); }
  const Block& block(std::size_t t) const { return blocks_[t]; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Index of the block holding each object.
  std::vector<std::size_t> block_of() const;

  std::size_t n_non_singleton_blocks() const;

  // Replace block t by (upper, lower), upper ranked directly above lower.
  OrderedPartition split(std::size_t t, std::span<const Object> upper,
                         std::span<const Object> lower) const;
  // Merge blocks t and t+1.
  OrderedPartition merged(std::size_t t) const;

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition&, const OrderedPartition&) = default;

 private:
  std::vector<Block> blocks_;
  std::size_t n_objects_ = 0;
};

// Text form used by sample dumps: blocks separated by '>', objects by ','.
// Objects are written in ascending order within a block.
std::string to_string(const OrderedPartition& x);

// Parses the text form. n_objects defaults to (max object + 1).
OrderedPartition parse_partition(std::string_view text, std::size_t n_objects = 0);

// Relation between two objects: +1 if a is ranked above b, -1 if below,
// 0 if tied.
int pair_relation(std::span<const std::size_t> block_of, Object a, Object b);

}  // namespace osm
