#include "osm/latent.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace osm {

LatentModel::LatentModel(PairPotentialModel base, std::vector<PairPotentialModel> hidden)
    : base_(std::move(base)), hidden_(std::move(hidden)) {
  for (std::size_t k = 0; k < hidden_.size(); ++k) {
    if (hidden_[k].n_objects() != base_.n_objects()) {
      throw std::invalid_argument(fmt::format("latent model: hidden unit {} has {} objects, base {}",
                                              k, hidden_[k].n_objects(), base_.n_objects()));
    }
  }
}

double log_omega_k(const OrderedPartition& x, const LatentModel& m, std::size_t k) {
  if (k >= m.n_hidden()) {
    throw std::out_of_range(fmt::format("log_omega_k: unit {} of {}", k, m.n_hidden()));
  }
  return log_weight(x, m.hidden(k));
}

std::vector<double> log_omegas(const OrderedPartition& x, const LatentModel& m) {
  std::vector<double> out(m.n_hidden());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = log_weight(x, m.hidden(k));
  return out;
}

double logistic(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

std::vector<double> hidden_posterior(const OrderedPartition& x, const LatentModel& m) {
  auto out = log_omegas(x, m);
  for (auto& v : out) v = logistic(v);
  return out;
}

std::vector<double> latent_representation(const OrderedPartition& x, const LatentModel& m) {
  return hidden_posterior(x, m);
}

double log_joint_weight(const OrderedPartition& x, const HiddenState& h, const LatentModel& m) {
  if (h.size() != m.n_hidden()) {
    throw std::invalid_argument(
        fmt::format("log_joint_weight: {} hidden values for {} units", h.size(), m.n_hidden()));
  }
  double total = log_weight(x, m.base());
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k]) total += log_weight(x, m.hidden(k));
  }
  return total;
}

PairPotentialModel effective_pair_model(const HiddenState& h, const LatentModel& m) {
  if (h.size() != m.n_hidden()) {
    throw std::invalid_argument(fmt::format("effective_pair_model: {} hidden values for {} units",
                                            h.size(), m.n_hidden()));
  }
  const std::size_t n = m.n_objects();
  auto base_tie = m.base().tie_table();
  auto base_order = m.base().order_table();
  std::vector<double> tie(base_tie.begin(), base_tie.end());
  std::vector<double> order(base_order.begin(), base_order.end());
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!h[k]) continue;
    auto ht = m.hidden(k).tie_table();
    auto ho = m.hidden(k).order_table();
    for (std::size_t i = 0; i < n * n; ++i) {
      tie[i] += ht[i];
      order[i] += ho[i];
    }
  }
  return PairPotentialModel(n, std::move(tie), std::move(order));
}

void sample_hidden(LatentChainState& state, const LatentModel& m, double tau) {
  const auto lo = log_omegas(state.chain.partition, m);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  state.hidden.resize(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) {
    state.hidden[k] = unif(state.chain.rng) < logistic(tau * lo[k]) ? 1 : 0;
  }
}

void gibbs_mh_step(LatentChainState& state, const LatentModel& m, std::size_t inner_steps,
                   double tau) {
  sample_hidden(state, m, tau);
  const auto effective = effective_pair_model(state.hidden, m);
  if (inner_steps == 0) inner_steps = std::max<std::size_t>(1, m.n_objects());
  for (std::size_t s = 0; s < inner_steps; ++s) mh_step(state.chain, effective, tau);
}

}  // namespace osm
