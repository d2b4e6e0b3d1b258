#include "osm/ordered_partition.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace osm {

OrderedPartition::OrderedPartition(std::vector<Block> blocks, std::size_t n_objects)
    : blocks_(std::move(blocks)), n_objects_(n_objects) {
  std::vector<bool> seen(n_objects, false);
  std::size_t total = 0;
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("ordered partition: empty block");
    std::sort(b.begin(), b.end());
    for (Object o : b) {
      if (o >= n_objects) {
        throw std::invalid_argument(
            fmt::format("ordered partition: object {} out of range [0, {})", o, n_objects));
      }
      if (seen[o]) {
        throw std::invalid_argument(fmt::format("ordered partition: object {} repeated", o));
      }
      seen[o] = true;
    }
    total += b.size();
  }
  if (total != n_objects) {
    throw std::invalid_argument(
        fmt::format("ordered partition: covers {} of {} objects", total, n_objects));
  }
}

OrderedPartition OrderedPartition::all_singletons(std::size_t n_objects) {
  std::vector<Block> blocks;
  blocks.reserve(n_objects);
  for (std::size_t i = 0; i < n_objects; ++i) blocks.push_back({static_cast<Object>(i)});
  return OrderedPartition(std::move(blocks), n_objects);
}

OrderedPartition OrderedPartition::single_block(std::size_t n_objects) {
  if (n_objects == 0) return {};
  Block b(n_objects);
  for (std::size_t i = 0; i < n_objects; ++i) b[i] = static_cast<Object>(i);
  return OrderedPartition({std::move(b)}, n_objects);
}

std::vector<std::size_t> OrderedPartition::block_of() const {
  std::vector<std::size_t> out(n_objects_);
  for (std::size_t t = 0; t < blocks_.size(); ++t) {
    for (Object o : blocks_[t]) out[o] = t;
  }
  return out;
}

std::size_t OrderedPartition::n_non_singleton_blocks() const {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() > 1; }));
}

OrderedPartition OrderedPartition::split(std::size_t t, std::span<const Object> upper,
                                         std::span<const Object> lower) const {
  if (t >= blocks_.size()) throw std::invalid_argument("split: block index out of range");
  if (upper.empty() || lower.empty()) throw std::invalid_argument("split: empty side");
  if (upper.size() + lower.size() != blocks_[t].size()) {
    throw std::invalid_argument("split: sides do not cover the block");
  }
  Block a(upper.begin(), upper.end());
  Block b(lower.begin(), lower.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Block joined;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(joined));
  if (joined != blocks_[t] || std::adjacent_find(joined.begin(), joined.end()) != joined.end()) {
    throw std::invalid_argument("split: sides are not a bipartition of the block");
  }
  OrderedPartition out;
  out.n_objects_ = n_objects_;
  out.blocks_.reserve(blocks_.size() + 1);
  for (std::size_t s = 0; s < blocks_.size(); ++s) {
    if (s == t) {
      out.blocks_.push_back(std::move(a));
      out.blocks_.push_back(std::move(b));
    } else {
      out.blocks_.push_back(blocks_[s]);
    }
  }
  return out;
}

OrderedPartition OrderedPartition::merged(std::size_t t) const {
  if (t + 1 >= blocks_.size()) throw std::invalid_argument("merge: no block after index");
  OrderedPartition out;
  out.n_objects_ = n_objects_;
  out.blocks_.reserve(blocks_.size() - 1);
  for (std::size_t s = 0; s < blocks_.size(); ++s) {
    if (s == t) {
      Block m;
      std::merge(blocks_[t].begin(), blocks_[t].end(), blocks_[t + 1].begin(),
                 blocks_[t + 1].end(), std::back_inserter(m));
      out.blocks_.push_back(std::move(m));
      ++s;
    } else {
      out.blocks_.push_back(blocks_[s]);
    }
  }
  return out;
}

std::string to_string(const OrderedPartition& x) {
  std::string out;
  for (std::size_t t = 0; t < x.n_blocks(); ++t) {
    if (t > 0) out += '>';
    const auto& b = x.block(t);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(b[i]);
    }
  }
  return out;
}

OrderedPartition parse_partition(std::string_view text, std::size_t n_objects) {
  std::vector<Block> blocks(1);
  Object max_obj = 0;
  bool any = false;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    if (*p == '>') {
      blocks.emplace_back();
      ++p;
    } else if (*p == ',') {
      ++p;
    } else if (*p == ' ' || *p == '\t' || *p == '\r' || *p == '\n') {
      ++p;
    } else {
      Object v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || next == p) {
        throw std::invalid_argument(fmt::format("cannot parse partition '{}'", text));
      }
      blocks.back().push_back(v);
      max_obj = std::max(max_obj, v);
      any = true;
      p = next;
    }
  }
  if (!any) throw std::invalid_argument("cannot parse empty partition");
  if (n_objects == 0) n_objects = static_cast<std::size_t>(max_obj) + 1;
  return OrderedPartition(std::move(blocks), n_objects);
}

int pair_relation(std::span<const std::size_t> block_of, Object a, Object b) {
  const auto ta = block_of[a];
  const auto tb = block_of[b];
  if (ta == tb) return 0;
  return ta < tb ? 1 : -1;
}

}  // namespace osm
