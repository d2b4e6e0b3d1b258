#include "osm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "osm/parallel.hpp"
#include "osm/ranking.hpp"

namespace osm {

namespace {

double dcg(std::span<const double> rel, std::size_t T) {
  double total = 0.0;
  const std::size_t n = std::min(T, rel.size());
  for (std::size_t i = 0; i < n; ++i) {
    total += (std::exp2(rel[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  }
  return total;
}

double stopping_probability(int grade) {
  return (std::exp2(static_cast<double>(grade - 1)) - 1.0) / 16.0;
}

using Ranker = std::function<RankedList(std::size_t)>;

EvaluationReport evaluate_with(const DataSplit& split, std::span<const MetricSpec> metrics,
                               std::size_t threads, const Ranker& rank_user) {
  EvaluationReport report;
  report.per_user.resize(split.train.size());
  parallel_for(split.train.size(), threads, [&](std::size_t u) {
    const auto& test = split.test[u];
    const auto ranked = rank_user(u);
    std::vector<double> rel;
    std::vector<int> grades;
    for (ItemId item : ranked.items) {
      const auto it = std::find_if(test.items.begin(), test.items.end(),
                                   [&](const auto& e) { return e.first == item; });
      rel.push_back(it->second);
      grades.push_back(it->second);
    }
    auto& um = report.per_user[u];
    um.user = test.user;
    for (const auto& m : metrics) {
      um.values.push_back(m.kind == MetricSpec::Kind::ndcg ? ndcg_at(rel, m.T) : err(grades));
    }
  });
  for (std::size_t j = 0; j < metrics.size(); ++j) {
    MetricSummary s;
    s.metric = metrics[j];
    s.n_users = report.per_user.size();
    if (s.n_users > 0) {
      double sum = 0.0, sq = 0.0;
      for (const auto& um : report.per_user) {
        sum += um.values[j];
        sq += um.values[j] * um.values[j];
      }
      const double n = static_cast<double>(s.n_users);
      s.mean = sum / n;
      if (s.n_users > 1) {
        const double var = std::max(0.0, (sq - n * s.mean * s.mean) / (n - 1.0));
        s.std_error = std::sqrt(var / n);
      }
    }
    report.summaries.push_back(s);
  }
  return report;
}

std::vector<ItemId> test_items(const UserItems& u) {
  std::vector<ItemId> out;
  out.reserve(u.items.size());
  for (const auto& [item, grade] : u.items) out.push_back(item);
  return out;
}

}  // namespace

double ndcg_at(std::span<const double> relevances, std::size_t T) {
  if (relevances.empty()) throw std::invalid_argument("ndcg_at: empty input");
  if (T == 0) throw std::invalid_argument("ndcg_at: T must be >= 1");
  for (double r : relevances) {
    if (r < 0.0) throw std::invalid_argument("ndcg_at: negative grade");
  }
  std::vector<double> ideal(relevances.begin(), relevances.end());
  std::stable_sort(ideal.begin(), ideal.end(), std::greater<>());
  const double kappa = dcg(ideal, T);
  if (kappa == 0.0) return 1.0;
  return dcg(relevances, T) / kappa;
}

double err(std::span<const int> grades) {
  if (grades.empty()) throw std::invalid_argument("err: empty input");
  double total = 0.0;
  double not_stopped = 1.0;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i] < 1 || grades[i] > 5) {
      throw std::invalid_argument(fmt::format("err: grade {} outside 1..5", grades[i]));
    }
    const double v = stopping_probability(grades[i]);
    total += not_stopped * v / static_cast<double>(i + 1);
    not_stopped *= 1.0 - v;
  }
  return total;
}

double pair_accuracy(const OrderedPartition& truth, std::span<const Object> ranking) {
  const std::size_t n = truth.n_objects();
  if (ranking.size() != n) throw std::invalid_argument("pair_accuracy: ranking size mismatch");
  const auto block = truth.block_of();
  std::vector<std::size_t> pos(n);
  for (std::size_t r = 0; r < n; ++r) pos[ranking[r]] = r;
  std::size_t total = 0, correct = 0;
  for (Object i = 0; i < n; ++i) {
    for (Object j = i + 1; j < n; ++j) {
      const int rel = pair_relation(block, i, j);
      if (rel == 0) continue;
      ++total;
      if ((rel > 0) == (pos[i] < pos[j])) ++correct;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 1.0;
}

std::string MetricSpec::name() const {
  return kind == Kind::err ? std::string("err") : fmt::format("ndcg@{}", T);
}

MetricSpec MetricSpec::parse(const std::string& text) {
  if (text == "err") return MetricSpec{Kind::err, 0};
  if (text.rfind("ndcg@", 0) == 0) {
    const auto rest = text.substr(5);
    std::size_t used = 0;
    long t = 0;
    try {
      t = std::stol(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && t >= 1) return MetricSpec{Kind::ndcg, static_cast<std::size_t>(t)};
  }
  throw std::invalid_argument("unknown metric '" + text + "' (expected ndcg@T or err)");
}

std::vector<MetricSpec> parse_metric_list(const std::string& comma_separated) {
  std::vector<MetricSpec> out;
  std::stringstream ss(comma_separated);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(MetricSpec::parse(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty metric list");
  return out;
}

EvaluationReport evaluate_completion(const CFParams& p, const DataSplit& split,
                                     std::span<const MetricSpec> metrics, std::size_t threads) {
  return evaluate_with(split, metrics, threads, [&](std::size_t u) {
    const auto seen = to_user_ranking(split.train[u]);
    return complete_rank(p, seen, test_items(split.test[u]));
  });
}

EvaluationReport evaluate_index_order(const DataSplit& split, std::span<const MetricSpec> metrics) {
  return evaluate_with(split, metrics, 1, [&](std::size_t u) {
    auto items = test_items(split.test[u]);
    std::sort(items.begin(), items.end());
    RankedList r;
    r.items = items;
    r.scores.assign(items.size(), 0.0);
    return r;
  });
}

std::string format_report(const EvaluationReport& report) {
  std::string out;
  for (const auto& s : report.summaries) {
    out += fmt::format("metric={} T={} mean={:.6f} std_error={:.6f} n_users={}\n", s.metric.name(),
                       s.metric.T, s.mean, s.std_error, s.n_users);
  }
  return out;
}

std::string format_per_user(const EvaluationReport& report) {
  std::string out = "user";
  for (const auto& s : report.summaries) out += "\t" + s.metric.name();
  out += '\n';
  for (const auto& um : report.per_user) {
    out += std::to_string(um.user);
    for (double v : um.values) out += fmt::format("\t{:.6f}", v);
    out += '\n';
  }
  return out;
}

}  // namespace osm
