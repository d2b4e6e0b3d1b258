#include "osm/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace osm {

namespace {

PairPotentialModel leading_submodel(const PairPotentialModel& m, std::size_t s) {
  std::vector<double> tie(s * s, 0.0), order(s * s, 0.0);
  for (Object a = 0; a < s; ++a) {
    for (Object b = 0; b < s; ++b) {
      if (a == b) continue;
      tie[a * s + b] = m.log_tie(a, b);
      order[a * s + b] = m.log_order(a, b);
    }
  }
  return PairPotentialModel(s, std::move(tie), std::move(order));
}

}  // namespace

RankedList rank_by_scores(std::span<const ItemId> items, std::span<const double> scores) {
  if (items.size() != scores.size()) throw std::invalid_argument("rank_by_scores: size mismatch");
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return items[a] < items[b];
  });
  RankedList out;
  out.items.reserve(idx.size());
  out.scores.reserve(idx.size());
  for (auto i : idx) {
    out.items.push_back(items[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

RankedList complete_rank(const UserRanking& seen, std::span<const ItemId> unseen, const LatentModel& m) {
  const std::size_t s = seen.items.size();
  if (s == 0) throw std::invalid_argument("complete_rank: empty seen set");
  if (m.n_objects() != s + unseen.size()) {
    throw std::invalid_argument(fmt::format("complete_rank: model has {} objects, expected {}",
                                            m.n_objects(), s + unseen.size()));
  }
  // The seen posterior depends only on potentials among seen objects.
  std::vector<double> post(m.n_hidden());
  for (std::size_t k = 0; k < m.n_hidden(); ++k) {
    post[k] = logistic(log_weight(seen.partition, leading_submodel(m.hidden(k), s)));
  }
  std::vector<double> scores(unseen.size(), 0.0);
  for (std::size_t j = 0; j < unseen.size(); ++j) {
    const auto oj = static_cast<Object>(s + j);
    double score = 0.0;
    for (Object i = 0; i < s; ++i) {
      score += m.base().log_order(oj, i);
      for (std::size_t k = 0; k < m.n_hidden(); ++k) score += post[k] * m.hidden(k).log_order(oj, i);
    }
    scores[j] = score;
  }
  return rank_by_scores(unseen, scores);
}

RankedList complete_rank(const CFParams& p, const UserRanking& seen, std::span<const ItemId> unseen) {
  if (seen.items.empty()) throw std::invalid_argument("complete_rank: empty seen set");
  const auto post = cf_hidden_posterior(p, seen.items, seen.partition);
  const double n_seen = static_cast<double>(seen.items.size());
  std::vector<double> scores(unseen.size());
  for (std::size_t j = 0; j < unseen.size(); ++j) {
    const ItemId item = unseen[j];
    if (item >= p.n_items()) throw std::invalid_argument("complete_rank: unseen item out of range");
    double v = p.u[item];
    for (std::size_t k = 0; k < p.K; ++k) v += post[k] * p.w(item, k);
    scores[j] = n_seen * v;
  }
  return rank_by_scores(unseen, scores);
}

RankedList reconstruct_rank(std::span<const double> posterior, std::span<const ItemId> items,
                            const CFParams& p) {
  if (posterior.size() != p.K) throw std::invalid_argument("reconstruct_rank: posterior size mismatch");
  std::vector<double> scores(items.size());
  for (std::size_t j = 0; j < items.size(); ++j) {
    const ItemId item = items[j];
    if (item >= p.n_items()) throw std::invalid_argument("reconstruct_rank: item out of range");
    double v = p.u[item];
    for (std::size_t k = 0; k < p.K; ++k) v += posterior[k] * p.w(item, k);
    scores[j] = v;
  }
  return rank_by_scores(items, scores);
}

}  // namespace osm
