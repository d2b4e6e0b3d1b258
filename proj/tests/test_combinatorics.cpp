#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "osm/combinatorics.hpp"
#include "osm/rng.hpp"
#include "support/oracles.hpp"

namespace osm {
namespace {

// Unordered set partitions of an n-set into exactly t blocks, by restricted
// growth strings.
std::size_t count_set_partitions(std::size_t n, std::size_t t) {
  std::size_t count = 0;
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      count += used == t;
      return;
    }
    for (std::size_t v = 0; v <= used && v < t; ++v) {
      a[i] = v;
      rec(i + 1, std::max(used, v + 1));
    }
  };
  if (n == 0) return t == 0;
  rec(0, 0);
  return count;
}

TEST(Stirling2, SmallValues) {
  EXPECT_EQ(stirling2(3, 3), 1);
  EXPECT_EQ(stirling2(3, 2), 3);
  EXPECT_EQ(stirling2(4, 2), 7);
  EXPECT_EQ(stirling2(0, 0), 1);
  EXPECT_EQ(stirling2(3, 0), 0);
  EXPECT_EQ(stirling2(2, 5), 0);
}

TEST(Stirling2, MatchesBruteForce) {
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::size_t t = 0; t <= n; ++t) {
      EXPECT_EQ(stirling2(n, t), count_set_partitions(n, t)) << n << "," << t;
    }
  }
}

TEST(Fubini, SmallValues) {
  EXPECT_EQ(fubini(0), 1);
  EXPECT_EQ(fubini(1), 1);
  EXPECT_EQ(fubini(3), 13);
  EXPECT_EQ(fubini(4), 75);
  EXPECT_EQ(fubini(10), 102247563);
}

TEST(Fubini, EqualsStirlingSum) {
  for (std::size_t n = 1; n <= 12; ++n) {
    BigCount sum = 0;
    BigCount fact = 1;
    for (std::size_t t = 1; t <= n; ++t) {
      fact *= t;
      sum += stirling2(n, t) * fact;
    }
    EXPECT_EQ(fubini(n), sum) << n;
  }
}

TEST(Fubini, ExceedsSixtyFourBits) {
  EXPECT_GT(fubini(21), BigCount(std::numeric_limits<std::uint64_t>::max()));
}

TEST(FubiniAsymptotic, ClosedForm) {
  EXPECT_NEAR(fubini_asymptotic(1), 1.0 / (2.0 * std::pow(std::log(2.0), 2)), 1e-12);
  EXPECT_NEAR(fubini_asymptotic(1), 1.0407, 1e-4);
}

TEST(FubiniAsymptotic, RatioToExact) {
  const double r10 = fubini(10).convert_to<double>() / fubini_asymptotic(10);
  EXPECT_GE(r10, 0.99);
  EXPECT_LE(r10, 1.01);
  const double r15 = fubini(15).convert_to<double>() / fubini_asymptotic(15);
  EXPECT_GE(r15, 0.999);
  EXPECT_LE(r15, 1.001);
}

TEST(FubiniAsymptotic, DeviationEnvelopeShrinks) {
  std::vector<double> dev;
  for (std::size_t n = 5; n <= 15; ++n) {
    dev.push_back(std::abs(fubini(n).convert_to<double>() / fubini_asymptotic(n) - 1.0));
  }
  // Strictly decreasing while the error is far above double rounding.
  for (std::size_t i = 1; i < 8; ++i) EXPECT_LT(dev[i], dev[i - 1]);
  // Running max from the right is non-increasing in n.
  double tail_max = 0.0;
  for (std::size_t i = dev.size(); i-- > 0;) {
    EXPECT_GE(std::max(tail_max, dev[i]) + 1e-13, tail_max);
    tail_max = std::max(tail_max, dev[i]);
  }
  EXPECT_LT(dev.back(), 1e-13);
}

TEST(FubiniAsymptotic, OverflowSignaled) {
  EXPECT_THROW(fubini_asymptotic(400), std::overflow_error);
  EXPECT_TRUE(std::isfinite(log_fubini_asymptotic(400)));
  EXPECT_THROW(fubini_asymptotic(0), std::invalid_argument);
}

TEST(Enumerate, SmallCases) {
  const auto one = enumerate_ordered_partitions(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(to_string(one[0]), "0");

  const auto two = enumerate_ordered_partitions(2);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(to_string(two[0]), "0,1");
  EXPECT_EQ(to_string(two[1]), "0>1");
  EXPECT_EQ(to_string(two[2]), "1>0");

  EXPECT_EQ(enumerate_ordered_partitions(4).size(), 75u);
}

TEST(Enumerate, LengthMatchesFubiniWithoutDuplicates) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = enumerate_ordered_partitions(n);
    EXPECT_EQ(BigCount(all.size()), fubini(n));
    std::set<OrderedPartition> unique(all.begin(), all.end());
    EXPECT_EQ(unique.size(), all.size());
    const auto brute = testing::brute_force_states(n);
    EXPECT_EQ(unique, std::set<OrderedPartition>(brute.begin(), brute.end()));
  }
}

TEST(Enumerate, Deterministic) {
  EXPECT_EQ(enumerate_ordered_partitions(5), enumerate_ordered_partitions(5));
}

TEST(Enumerate, CapRefusesWithEstimate) {
  try {
    enumerate_ordered_partitions(9);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.states(), 7087261);
    EXPECT_NE(std::string(e.what()).find("7087261"), std::string::npos);
  }
  EXPECT_EQ(enumerate_ordered_partitions(3, 3).size(), 13u);
  EXPECT_THROW(enumerate_ordered_partitions(3, 2), CapExceeded);
}

TEST(UniformSampler, SingleObject) {
  auto rng = make_rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(to_string(sample_uniform_ordered_partition(1, rng)), "0");
}

TEST(UniformSampler, TwoObjectsWithinBinomialBound) {
  auto rng = make_rng(2);
  const int draws = 100000;
  std::map<std::string, int> counts;
  UniformPartitionSampler sampler(2);
  for (int i = 0; i < draws; ++i) ++counts[to_string(sampler(rng))];
  ASSERT_EQ(counts.size(), 3u);
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [state, c] : counts) EXPECT_NEAR(c, draws * p, 3 * sigma) << state;
}

// Chi-square critical values at significance 0.01 for df = fubini(n) - 1.
double chi2_critical_01(std::size_t df) {
  switch (df) {
    case 2: return 9.2103;
    case 12: return 26.2170;
    case 74: return 105.2020;
    default: return NAN;
  }
}

class UniformSamplerGoodnessOfFit : public ::testing::TestWithParam<std::size_t> {};

TEST_P(UniformSamplerGoodnessOfFit, ChiSquare) {
  const std::size_t n = GetParam();
  const testing::StateIndex states(n);
  auto rng = make_rng(100 + n);
  UniformPartitionSampler sampler(n);
  const int draws = 1000000;
  std::vector<double> counts(states.size(), 0.0);
  for (int i = 0; i < draws; ++i) counts[states.at(sampler(rng))] += 1.0;
  const double expected = static_cast<double>(draws) / static_cast<double>(states.size());
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, chi2_critical_01(states.size() - 1));
  if (n == 4) {
    std::vector<double> emp(counts.size()), uni(counts.size(), 1.0 / 75.0);
    for (std::size_t i = 0; i < counts.size(); ++i) emp[i] = counts[i] / draws;
    EXPECT_LT(testing::total_variation(emp, uni), 0.01);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallN, UniformSamplerGoodnessOfFit, ::testing::Values(2, 3, 4));

}  // namespace
}  // namespace osm
