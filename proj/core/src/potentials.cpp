#include "osm/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace osm {

PairPotentialModel::PairPotentialModel(std::size_t n_objects)
    : n_(n_objects), tie_(n_objects * n_objects, 0.0), order_(n_objects * n_objects, 0.0) {}

PairPotentialModel::PairPotentialModel(std::size_t n_objects, std::vector<double> log_tie,
                                       std::vector<double> log_order)
    : n_(n_objects), tie_(std::move(log_tie)), order_(std::move(log_order)) {
  if (tie_.size() != n_ * n_ || order_.size() != n_ * n_) {
    throw std::invalid_argument(fmt::format("pair model: tables must be {}x{}", n_, n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      const double t = tie_[i * n_ + j];
      if (!std::isfinite(t) || !std::isfinite(order_[i * n_ + j])) {
        throw std::invalid_argument(fmt::format("pair model: non-finite potential at ({},{})", i, j));
      }
      if (t != tie_[j * n_ + i]) {
        throw std::invalid_argument(fmt::format("pair model: log_tie not symmetric at ({},{})", i, j));
      }
    }
  }
}

PairPotentialModel PairPotentialModel::scaled(double s) const {
  PairPotentialModel out = *this;
  for (auto& v : out.tie_) v *= s;
  for (auto& v : out.order_) v *= s;
  return out;
}

PairPotentialModel PairPotentialModel::plus_scaled(const PairPotentialModel& other, double s) const {
  if (other.n_ != n_) throw std::invalid_argument("pair model: object count mismatch");
  PairPotentialModel out = *this;
  for (std::size_t i = 0; i < tie_.size(); ++i) {
    out.tie_[i] += s * other.tie_[i];
    out.order_[i] += s * other.order_[i];
  }
  return out;
}

double log_weight(const OrderedPartition& x, const PairPotentialModel& m) {
  if (x.n_objects() != m.n_objects()) {
    throw std::invalid_argument(fmt::format("log_weight: partition has {} objects, model {}",
                                            x.n_objects(), m.n_objects()));
  }
  double total = 0.0;
  const auto& blocks = x.blocks();
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    const auto& bt = blocks[t];
    for (std::size_t a = 0; a < bt.size(); ++a) {
      for (std::size_t b = a + 1; b < bt.size(); ++b) total += m.log_tie(bt[a], bt[b]);
    }
    for (std::size_t u = t + 1; u < blocks.size(); ++u) {
      for (Object i : bt) {
        for (Object j : blocks[u]) total += m.log_order(i, j);
      }
    }
  }
  return total;
}

double log_ratio_split(const OrderedPartition& x, std::size_t t, const Bipartition& split,
                       const PairPotentialModel& m) {
  if (t >= x.n_blocks()) throw std::invalid_argument("log_ratio_split: block index out of range");
  const auto& block = x.block(t);
  if (split.upper.empty() || split.lower.empty() ||
      split.upper.size() + split.lower.size() != block.size()) {
    throw std::invalid_argument("log_ratio_split: not a bipartition of the block");
  }
  std::vector<int> side(x.n_objects(), -1);
  for (Object o : block) side[o] = 0;
  for (Object o : split.upper) {
    if (o >= side.size() || side[o] != 0) {
      throw std::invalid_argument("log_ratio_split: not a bipartition of the block");
    }
    side[o] = 1;
  }
  for (Object o : split.lower) {
    if (o >= side.size() || side[o] != 0) {
      throw std::invalid_argument("log_ratio_split: not a bipartition of the block");
    }
    side[o] = 2;
  }
  double total = 0.0;
  for (Object i : split.upper) {
    for (Object j : split.lower) total += m.log_order(i, j) - m.log_tie(i, j);
  }
  return total;
}

double log_ratio_merge(const OrderedPartition& x, std::size_t t, const PairPotentialModel& m) {
  if (t + 1 >= x.n_blocks()) throw std::invalid_argument("log_ratio_merge: t is the last block");
  double total = 0.0;
  for (Object i : x.block(t)) {
    for (Object j : x.block(t + 1)) total += m.log_tie(i, j) - m.log_order(i, j);
  }
  return total;
}

PairPotentialModel loglinear_pair_model(const LogLinearParams& p) {
  if (p.alpha.size() != p.tie_features.size() || p.beta.size() != p.order_features.size()) {
    throw std::invalid_argument(fmt::format(
        "loglinear_pair_model: {} tie weights for {} features, {} order weights for {} features",
        p.alpha.size(), p.tie_features.size(), p.beta.size(), p.order_features.size()));
  }
  const std::size_t n = p.n_objects;
  std::vector<double> tie(n * n, 0.0), order(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto oi = static_cast<Object>(i), oj = static_cast<Object>(j);
      double lt = 0.0, lo = 0.0;
      for (std::size_t a = 0; a < p.alpha.size(); ++a) {
        if (p.alpha[a] != 0.0) lt += p.alpha[a] * p.tie_features[a](oi, oj);
      }
      for (std::size_t b = 0; b < p.beta.size(); ++b) {
        if (p.beta[b] != 0.0) lo += p.beta[b] * p.order_features[b](oi, oj);
      }
      tie[i * n + j] = lt;
      order[i * n + j] = lo;
    }
  }
  return PairPotentialModel(n, std::move(tie), std::move(order));
}

LogLinearParams indicator_features(std::size_t n_objects) {
  LogLinearParams p;
  p.n_objects = n_objects;
  p.tie_features.emplace_back([](Object, Object) { return 1.0; });
  p.order_features.emplace_back([](Object, Object) { return 1.0; });
  for (Object i = 0; i < n_objects; ++i) {
    for (Object j = 0; j < n_objects; ++j) {
      if (i == j) continue;
      if (i < j) {
        p.tie_features.emplace_back([i, j](Object a, Object b) {
          return ((a == i && b == j) || (a == j && b == i)) ? 1.0 : 0.0;
        });
      }
      p.order_features.emplace_back([i, j](Object a, Object b) {
        return (a == i && b == j) ? 1.0 : 0.0;
      });
    }
  }
  p.alpha.assign(p.tie_features.size(), 0.0);
  p.beta.assign(p.order_features.size(), 0.0);
  return p;
}

OrderedPartition from_graded_ratings(const std::map<Object, double>& grades) {
  if (grades.empty()) throw std::invalid_argument("from_graded_ratings: no grades");
  std::map<double, Block, std::greater<>> by_grade;
  Object max_obj = 0;
  for (const auto& [obj, g] : grades) {
    by_grade[g].push_back(obj);
    max_obj = std::max(max_obj, obj);
  }
  std::vector<Block> blocks;
  blocks.reserve(by_grade.size());
  for (auto& [g, b] : by_grade) blocks.push_back(std::move(b));
  return OrderedPartition(std::move(blocks), static_cast<std::size_t>(max_obj) + 1);
}

}  // namespace osm
