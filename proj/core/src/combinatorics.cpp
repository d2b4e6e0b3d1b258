#include "osm/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

namespace osm {

namespace {

std::string describe_cap(std::size_t n, std::size_t cap, const BigCount& states) {
  return fmt::format("enumeration of n={} exceeds cap {} (fubini({}) = {} states)", n, cap, n,
                     states.str());
}

// Ordered Bell numbers a(0..n), cached and grown on demand.
const std::vector<BigCount>& ordered_bell_table(std::size_t n) {
  static std::mutex mu;
  static std::vector<BigCount> table{BigCount(1)};
  std::lock_guard lock(mu);
  while (table.size() <= n) {
    const std::size_t m = table.size();
    BigCount a = 0;
    for (std::size_t k = 1; k <= m; ++k) a += binomial(m, k) * table[m - k];
    table.push_back(a);
  }
  return table;
}

}  // namespace

CapExceeded::CapExceeded(std::size_t n, std::size_t cap, BigCount states)
    : std::runtime_error(describe_cap(n, cap, states)), n_(n), cap_(cap), states_(std::move(states)) {}

BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigCount stirling2(std::size_t n, std::size_t t) {
  if (t > n) return 0;
  if (n == 0) return t == 0 ? 1 : 0;
  if (t == 0) return 0;
  // Row-by-row recurrence s(m,j) = j s(m-1,j) + s(m-1,j-1).
  std::vector<BigCount> row(t + 1, 0);
  row[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t j = std::min(m, t); j >= 1; --j) row[j] = row[j] * j + row[j - 1];
    row[0] = 0;
  }
  return row[t];
}

BigCount fubini(std::size_t n) {
  const auto& table = ordered_bell_table(n);
  return table[n];
}

double log_fubini_asymptotic(std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::lgamma(nn + 1.0) - std::log(2.0) - (nn + 1.0) * std::log(std::log(2.0));
}

double fubini_asymptotic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("fubini_asymptotic: n must be >= 1");
  const double lv = log_fubini_asymptotic(n);
  if (lv > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error(
        fmt::format("fubini_asymptotic({}) = exp({}) overflows double", n, lv));
  }
  return std::exp(lv);
}

namespace detail {

void enumerate_rec(std::vector<Object>& remaining, std::vector<Block>& prefix, std::size_t n,
                   const std::function<void(const OrderedPartition&)>& fn) {
  const std::size_t m = remaining.size();
  if (m == 0) {
    fn(OrderedPartition(prefix, n));
    return;
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = m; k >= 1; --k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Block top;
      std::vector<Object> rest;
      std::size_t j = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (j < k && idx[j] == i) {
          top.push_back(remaining[i]);
          ++j;
        } else {
          rest.push_back(remaining[i]);
        }
      }
      prefix.push_back(std::move(top));
      enumerate_rec(rest, prefix, n, fn);
      prefix.pop_back();
      // Next k-combination of {0..m-1} in lexicographic order.
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

}  // namespace detail

std::vector<OrderedPartition> enumerate_ordered_partitions(std::size_t n, std::size_t cap) {
  std::vector<OrderedPartition> out;
  if (n <= cap) out.reserve(static_cast<std::size_t>(fubini(n)));
  for_each_ordered_partition(n, [&](const OrderedPartition& x) { out.push_back(x); }, cap);
  return out;
}

UniformPartitionSampler::UniformPartitionSampler(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("uniform partition sampler: n must be >= 1");
  using boost::multiprecision::cpp_bin_float_50;
  const auto& a = ordered_bell_table(n);
  top_block_cdf_.resize(n + 1);
  for (std::size_t m = 1; m <= n; ++m) {
    auto& cdf = top_block_cdf_[m];
    cdf.resize(m);
    BigCount acc = 0;
    const cpp_bin_float_50 total(a[m]);
    for (std::size_t k = 1; k <= m; ++k) {
      acc += binomial(m, k) * a[m - k];
      cdf[k - 1] = static_cast<double>(cpp_bin_float_50(acc) / total);
    }
    cdf[m - 1] = 1.0;
  }
}

}  // namespace osm
