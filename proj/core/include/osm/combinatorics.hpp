#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "osm/ordered_partition.hpp"

namespace osm {

using BigCount = boost::multiprecision::cpp_int;

// Raised when an exhaustive operation would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t n, std::size_t cap, BigCount states);
  std::size_t n() const { return n_; }
  std::size_t cap() const { return cap_; }
  const BigCount& states() const { return states_; }

 private:
  std::size_t n_;
  std::size_t cap_;
  BigCount states_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 8;

BigCount binomial(std::size_t n, std::size_t k);

// Stirling number of the second kind. Zero outside the valid range.
BigCount stirling2(std::size_t n, std::size_t t);

// Number of ordered set partitions of an n-set (ordered Bell number).
BigCount fubini(std::size_t n);

// log of n!/(2 (ln 2)^(n+1)).
double log_fubini_asymptotic(std::size_t n);

// Linear-scale asymptote. Throws std::overflow_error when it does not fit
// in a double.
double fubini_asymptotic(std::size_t n);

// Every ordered partition of {0..n-1} exactly once. The top block is
// chosen first (largest size first, then lexicographic member combination)
// and the remainder is enumerated recursively.
std::vector<OrderedPartition> enumerate_ordered_partitions(
    std::size_t n, std::size_t cap = kDefaultEnumerationCap);

// Visits every ordered partition without materializing the whole list.
template <typename Fn>
void for_each_ordered_partition(std::size_t n, Fn&& fn,
                                std::size_t cap = kDefaultEnumerationCap);

// Exact uniform sampler over the fubini(n) ordered partitions of an n-set.
// The size of the top block is drawn with probability C(m,k) a(m-k) / a(m)
// where a is the ordered Bell sequence; its members are then drawn uniformly
// and the procedure recurses on the remaining objects.
class UniformPartitionSampler {
 public:
  explicit UniformPartitionSampler(std::size_t n);

  std::size_t n() const { return n_; }

  template <typename Rng>
  OrderedPartition operator()(Rng& rng) const;

 private:
  std::size_t n_;
  // top_block_cdf_[m][k-1] = P(top block has size <= k | m objects remain).
  std::vector<std::vector<double>> top_block_cdf_;
};

template <typename Rng>
OrderedPartition sample_uniform_ordered_partition(std::size_t n, Rng& rng) {
  return UniformPartitionSampler(n)(rng);
}

// ---------------------------------------------------------------------------

namespace detail {
void enumerate_rec(std::vector<Object>& remaining, std::vector<Block>& prefix,
                   std::size_t n, const std::function<void(const OrderedPartition&)>& fn);
}

template <typename Fn>
void for_each_ordered_partition(std::size_t n, Fn&& fn, std::size_t cap) {
  if (n > cap) throw CapExceeded(n, cap, fubini(n));
  if (n == 0) return;
  std::vector<Object> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = static_cast<Object>(i);
  std::vector<Block> prefix;
  std::function<void(const OrderedPartition&)> visit = [&](const OrderedPartition& x) { fn(x); };
  detail::enumerate_rec(remaining, prefix, n, visit);
}

template <typename Rng>
OrderedPartition UniformPartitionSampler::operator()(Rng& rng) const {
  std::vector<Object> remaining(n_);
  for (std::size_t i = 0; i < n_; ++i) remaining[i] = static_cast<Object>(i);
  std::vector<Block> blocks;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (!remaining.empty()) {
    const auto m = remaining.size();
    const auto& cdf = top_block_cdf_[m];
    const double r = unif(rng);
    std::size_t k = 1;
    while (k < m && r >= cdf[k - 1]) ++k;
    // Partial Fisher-Yates: the first k entries become a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m - 1);
      std::swap(remaining[i], remaining[pick(rng)]);
    }
    Block top(remaining.begin(), remaining.begin() + static_cast<std::ptrdiff_t>(k));
    remaining.erase(remaining.begin(), remaining.begin() + static_cast<std::ptrdiff_t>(k));
    blocks.push_back(std::move(top));
  }
  return OrderedPartition(std::move(blocks), n_);
}

}  // namespace osm
