#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "osm/combinatorics.hpp"
#include "osm/latent.hpp"
#include "osm/ordered_partition.hpp"
#include "osm/rng.hpp"

namespace osm {

using ItemId = std::size_t;

// Collaborative-filtering parameters: theta = e^nu, item worth e^{u_i},
// per-hidden-unit worth e^{W_ik}. W is row-major n_items x K.
struct CFParams {
  double nu = 0.0;
  std::vector<double> u;
  std::vector<double> W;
  std::size_t K = 0;

  std::size_t n_items() const { return u.size(); }
  double w(ItemId i, std::size_t k) const { return W[i * K + k]; }
  double& w(ItemId i, std::size_t k) { return W[i * K + k]; }

  static CFParams zeros(std::size_t n_items, std::size_t K);
  // u, W ~ uniform(-scale, scale), nu = 0.
  static CFParams random_init(std::size_t n_items, std::size_t K, Rng& rng, double scale = 0.01);

  void validate() const;
  friend bool operator==(const CFParams&, const CFParams&) = default;
};

// One user's data: partition over local objects 0..n-1, object o is items[o].
struct UserRanking {
  std::vector<ItemId> items;
  OrderedPartition partition;
};

// Latent model over the given items (local object o is items[o]):
//   base:   log_tie = nu + (u_i + u_j)/2,        log_order(i > j) = u_i
//   unit k: log_tie = nu + (W_ik + W_jk)/2,      log_order(i > j) = W_ik
LatentModel cf_latent_model(const CFParams& p, std::span<const ItemId> items);
LatentModel cf_latent_model(const CFParams& p);

// Closed forms for the CF parameterization. With c_o = (|block(o)| - 1)/2 +
// #objects ranked below o and n_tie the number of within-block pairs,
// log Omega = nu n_tie + sum_o c_o u_o, log Omega_k = nu n_tie + sum_o c_o W_ok.
std::vector<double> cf_object_coefficients(const OrderedPartition& x);
double cf_log_weight(const CFParams& p, std::span<const ItemId> items, const OrderedPartition& x);
std::vector<double> cf_log_omegas(const CFParams& p, std::span<const ItemId> items,
                                  const OrderedPartition& x);
std::vector<double> cf_hidden_posterior(const CFParams& p, std::span<const ItemId> items,
                                        const OrderedPartition& x);
// Pair model of Omega_hat(., h) for fixed h, built in O(n K + n^2).
PairPotentialModel cf_effective_pair_model(const CFParams& p, std::span<const ItemId> items,
                                           std::span<const double> h);

// Shaped like CFParams; holds sums or means of sufficient statistics and
// gradients.
struct GradientEstimate {
  double d_nu = 0.0;
  std::vector<double> d_u;
  std::vector<double> d_W;
  std::size_t K = 0;
  std::size_t n_data_terms = 0;
  std::size_t n_model_samples = 0;

  static GradientEstimate zeros(std::size_t n_items, std::size_t K);
  double dw(ItemId i, std::size_t k) const { return d_W[i * K + k]; }
  double max_abs() const;
  double norm() const;
};

// Adds the derivative of log Omega_hat(X, h) w.r.t. (nu, u, W) into acc. h may
// be binary or a vector of posterior probabilities (length K).
void accumulate_sufficient_stats(GradientEstimate& acc, const OrderedPartition& x,
                                 std::span<const ItemId> items, std::span<const double> h,
                                 double weight = 1.0);

GradientEstimate sufficient_stats(const OrderedPartition& x, std::span<const ItemId> items,
                                  std::span<const double> h, std::size_t n_items, std::size_t K);

struct StatePoint {
  std::vector<ItemId> items;
  OrderedPartition partition;
  std::vector<double> hidden;
};

// mean stats over `observed` minus mean stats over `model_samples`.
GradientEstimate estimate_gradient(std::span<const StatePoint> observed,
                                   std::span<const StatePoint> model_samples, std::size_t n_items,
                                   std::size_t K);

// Mean per-user log-likelihood log P(X_u) with h marginalized, by enumeration.
double exact_log_likelihood(const CFParams& p, std::span<const UserRanking> data,
                            std::size_t cap = kDefaultEnumerationCap);

// Gradient of exact_log_likelihood: data term with exact posteriors minus the
// exact model expectation. Item sets are enumerated once each.
GradientEstimate exact_gradient(const CFParams& p, std::span<const UserRanking> data,
                                std::size_t cap = kDefaultEnumerationCap);

// Fraction of object pairs whose relation (above, below, tied) differs.
double pairwise_disagreement(const OrderedPartition& a, const OrderedPartition& b);

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t block_size = 100;
  std::size_t chain_steps_per_update = 1;
  std::size_t epochs = 1;
  std::size_t K = 0;
  std::uint64_t seed = 0;
  double l2 = 0.0;
  double init_scale = 0.01;
  std::size_t threads = 1;
};

struct BlockLog {
  std::size_t epoch = 0;
  std::size_t block = 0;
  std::size_t users = 0;
  // Mean pairwise disagreement between chain samples and observed data.
  double disagreement = 0.0;
  double split_acceptance = 0.0;
  double merge_acceptance = 0.0;
};

struct TrainResult {
  CFParams params;
  std::vector<BlockLog> log;
  std::size_t skipped_users = 0;
};

using BlockCallback = std::function<void(const BlockLog&, const CFParams&)>;

// Stochastic-gradient training with one persistent Gibbs/split-merge chain per
// user. Chains start at the observed data and advance chain_steps_per_update
// sweeps per block; parameters are updated after every block of users.
TrainResult train(std::span<const UserRanking> data, std::size_t n_items, const TrainConfig& cfg,
                  const BlockCallback& on_block = {});

TrainResult train(std::span<const UserRanking> data, CFParams init, const TrainConfig& cfg,
                  const BlockCallback& on_block = {});

}  // namespace osm
