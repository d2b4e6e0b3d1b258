#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "osm/ordered_partition.hpp"
#include "osm/potentials.hpp"
#include "osm/rng.hpp"
#include "osm/sampler.hpp"

namespace osm {

using HiddenState = std::vector<std::uint8_t>;

// OSM with K binary hidden units. Unit k, when on, multiplies the weight by
// Omega_k(X), built from its own pairwise potentials.
class LatentModel {
 public:
  LatentModel() = default;
  LatentModel(PairPotentialModel base, std::vector<PairPotentialModel> hidden);

  std::size_t n_objects() const { return base_.n_objects(); }
  std::size_t n_hidden() const { return hidden_.size(); }
  const PairPotentialModel& base() const { return base_; }
  const PairPotentialModel& hidden(std::size_t k) const { return hidden_.at(k); }

 private:
  PairPotentialModel base_;
  std::vector<PairPotentialModel> hidden_;
};

double log_omega_k(const OrderedPartition& x, const LatentModel& m, std::size_t k);

// (log Omega_1(X), ..., log Omega_K(X)).
std::vector<double> log_omegas(const OrderedPartition& x, const LatentModel& m);

double logistic(double v);

// P(h_k = 1 | X) = logistic(log Omega_k(X)) for each k.
std::vector<double> hidden_posterior(const OrderedPartition& x, const LatentModel& m);

// Posterior vector used as a fixed-length representation of X.
std::vector<double> latent_representation(const OrderedPartition& x, const LatentModel& m);

// log Omega(X) + sum_k h_k log Omega_k(X).
double log_joint_weight(const OrderedPartition& x, const HiddenState& h, const LatentModel& m);

// Pairwise model whose weight equals the joint weight for fixed h.
PairPotentialModel effective_pair_model(const HiddenState& h, const LatentModel& m);

struct LatentChainState {
  ChainState chain;
  HiddenState hidden;

  LatentChainState(OrderedPartition x, std::size_t n_hidden, Rng rng)
      : chain(std::move(x), std::move(rng)), hidden(n_hidden, 0) {}
};

// Samples h_k ~ Bernoulli(logistic(tau * log Omega_k(X))) independently.
void sample_hidden(LatentChainState& state, const LatentModel& m, double tau = 1.0);

// One alternating sweep: h | X exactly, then `inner_steps` split-merge MH
// steps on X | h (0 means one step per object). At tau != 1 the sweep
// targets P(X, h | tau) proportional to Omega_hat(X, h)^tau.
void gibbs_mh_step(LatentChainState& state, const LatentModel& m, std::size_t inner_steps = 0,
                   double tau = 1.0);

}  // namespace osm
