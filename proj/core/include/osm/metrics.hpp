#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "osm/learning.hpp"
#include "osm/ratings.hpp"

namespace osm {

// NDCG@T of relevance grades listed in predicted order. The ideal ordering
// sorts the same grades descending; an all-zero ideal gain scores 1.
double ndcg_at(std::span<const double> relevances, std::size_t T);

// Expected reciprocal rank with stopping probability V(r) = (2^(r-1) - 1)/16,
// grades in 1..5.
double err(std::span<const int> grades);

// Fraction of strictly ordered pairs of `truth` whose order `ranking`
// reproduces. Tied pairs in truth are ignored. `ranking` lists local objects
// best first.
double pair_accuracy(const OrderedPartition& truth, std::span<const Object> ranking);

struct MetricSpec {
  enum class Kind { ndcg, err } kind = Kind::ndcg;
  std::size_t T = 0;  // cutoff for ndcg

  std::string name() const;
  // "ndcg@5", "err". Throws std::invalid_argument on unknown names.
  static MetricSpec parse(const std::string& text);
};

std::vector<MetricSpec> parse_metric_list(const std::string& comma_separated);

struct MetricSummary {
  MetricSpec metric;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_users = 0;
};

struct UserMetrics {
  std::size_t user = 0;
  std::vector<double> values;  // parallel to the metric list
};

struct EvaluationReport {
  std::vector<MetricSummary> summaries;
  std::vector<UserMetrics> per_user;
};

// Rank completion on a train/test split: each user's training items form
// the seen partition and the test items are ranked with complete_rank.
EvaluationReport evaluate_completion(const CFParams& p, const DataSplit& split,
                                     std::span<const MetricSpec> metrics, std::size_t threads = 1);

// Same protocol with an explicit ascending-item-index ranking of the test
// items (what a model with all-equal scores produces).
EvaluationReport evaluate_index_order(const DataSplit& split, std::span<const MetricSpec> metrics);

// "metric=ndcg@5 T=5 mean=... std_error=... n_users=..." per line.
std::string format_report(const EvaluationReport& report);
// "user\t<metric>..." header then one line per user.
std::string format_per_user(const EvaluationReport& report);

}  // namespace osm
