#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "osm/ordered_partition.hpp"

namespace osm {

// Log-domain pairwise potentials over n objects:
//   log_tie(i, j)   = log phi(x_i ~ x_j), symmetric
//   log_order(i, j) = log psi(x_i > x_j)
// Stored densely; immutable once built.
class PairPotentialModel {
 public:
  PairPotentialModel() = default;
  // All potentials zero (every state has weight 1).
  explicit PairPotentialModel(std::size_t n_objects);
  // Row-major n x n tables. log_tie must be symmetric and both finite.
  PairPotentialModel(std::size_t n_objects, std::vector<double> log_tie,
                     std::vector<double> log_order);

  std::size_t n_objects() const { return n_; }
  double log_tie(Object i, Object j) const { return tie_[i * n_ + j]; }
  double log_order(Object i, Object j) const { return order_[i * n_ + j]; }

  std::span<const double> tie_table() const { return tie_; }
  std::span<const double> order_table() const { return order_; }

  // Every log-potential multiplied by s (the model raised to power s).
  PairPotentialModel scaled(double s) const;

  // this + s * other, entrywise.
  PairPotentialModel plus_scaled(const PairPotentialModel& other, double s) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> tie_;
  std::vector<double> order_;
};

// Ordered bipartition of a block: `upper` is ranked directly above `lower`.
struct Bipartition {
  std::vector<Object> upper;
  std::vector<Object> lower;
};

// log Omega(X): within-block tie pairs plus cross-block ordered pairs.
double log_weight(const OrderedPartition& x, const PairPotentialModel& m);

// log of the likelihood ratio for splitting block t of x into (upper, lower).
// Touches only pairs across the two sides.
double log_ratio_split(const OrderedPartition& x, std::size_t t, const Bipartition& split,
                       const PairPotentialModel& m);

// log of the likelihood ratio for merging blocks t and t+1 of x.
double log_ratio_merge(const OrderedPartition& x, std::size_t t, const PairPotentialModel& m);

// Log-linear parameterization: log_tie = sum_a alpha_a f_a(i,j),
// log_order = sum_b beta_b g_b(i,j).
struct LogLinearParams {
  using Feature = std::function<double(Object, Object)>;

  std::size_t n_objects = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<Feature> tie_features;
  std::vector<Feature> order_features;
};

PairPotentialModel loglinear_pair_model(const LogLinearParams& p);

// Toy feature set: a constant feature followed by one indicator per pair.
// Tie features cover unordered pairs i<j, order features cover ordered pairs
// i != j. Weights are left zero.
LogLinearParams indicator_features(std::size_t n_objects);

// Blocks are the distinct grades in decreasing order; objects with equal
// grade share a block.
OrderedPartition from_graded_ratings(const std::map<Object, double>& grades);

}  // namespace osm
