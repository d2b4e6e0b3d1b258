#include "osm/learning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "osm/parallel.hpp"
#include "osm/partition_fn.hpp"
#include "osm/sampler.hpp"

namespace osm {

namespace {

double log1p_exp(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

double n_tie_pairs(const OrderedPartition& x) {
  double n = 0.0;
  for (const auto& b : x.blocks()) n += 0.5 * static_cast<double>(b.size()) * static_cast<double>(b.size() - 1);
  return n;
}

void check_items(const CFParams& p, std::span<const ItemId> items) {
  for (ItemId i : items) {
    if (i >= p.n_items()) {
      throw std::invalid_argument(fmt::format("item {} out of range for {} items", i, p.n_items()));
    }
  }
}

// log P*(X) = log Omega(X) + sum_k log(1 + Omega_k(X)) and the posterior.
double cf_log_marginal(const CFParams& p, std::span<const ItemId> items, const OrderedPartition& x,
                       std::vector<double>* posterior) {
  const auto c = cf_object_coefficients(x);
  const double nu_part = p.nu * n_tie_pairs(x);
  double total = nu_part;
  for (std::size_t o = 0; o < c.size(); ++o) total += c[o] * p.u[items[o]];
  if (posterior) posterior->assign(p.K, 0.0);
  for (std::size_t k = 0; k < p.K; ++k) {
    double lo = nu_part;
    for (std::size_t o = 0; o < c.size(); ++o) lo += c[o] * p.w(items[o], k);
    total += log1p_exp(lo);
    if (posterior) (*posterior)[k] = logistic(lo);
  }
  return total;
}

void cf_sweep(LatentChainState& state, const CFParams& p, std::span<const ItemId> items) {
  const auto lo = cf_log_omegas(p, items, state.chain.partition);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> h(p.K);
  state.hidden.resize(p.K);
  for (std::size_t k = 0; k < p.K; ++k) {
    state.hidden[k] = unif(state.chain.rng) < logistic(lo[k]) ? 1 : 0;
    h[k] = state.hidden[k];
  }
  const auto effective = cf_effective_pair_model(p, items, h);
  const std::size_t inner = std::max<std::size_t>(1, items.size());
  for (std::size_t s = 0; s < inner; ++s) mh_step(state.chain, effective);
}

}  // namespace

CFParams CFParams::zeros(std::size_t n_items, std::size_t K) {
  CFParams p;
  p.u.assign(n_items, 0.0);
  p.W.assign(n_items * K, 0.0);
  p.K = K;
  return p;
}

CFParams CFParams::random_init(std::size_t n_items, std::size_t K, Rng& rng, double scale) {
  CFParams p = zeros(n_items, K);
  std::uniform_real_distribution<double> unif(-scale, scale);
  for (auto& v : p.u) v = unif(rng);
  for (auto& v : p.W) v = unif(rng);
  return p;
}

void CFParams::validate() const {
  if (W.size() != u.size() * K) {
    throw std::invalid_argument(
        fmt::format("CF params: W has {} entries, expected {} x {}", W.size(), u.size(), K));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::isfinite(nu) || !std::all_of(u.begin(), u.end(), finite) ||
      !std::all_of(W.begin(), W.end(), finite)) {
    throw std::invalid_argument("CF params: non-finite entry");
  }
}

LatentModel cf_latent_model(const CFParams& p, std::span<const ItemId> items) {
  p.validate();
  check_items(p, items);
  const std::size_t n = items.size();
  auto build = [&](auto worth) {
    std::vector<double> tie(n * n, 0.0), order(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        tie[a * n + b] = p.nu + 0.5 * (worth(items[a]) + worth(items[b]));
        order[a * n + b] = worth(items[a]);
      }
    }
    return PairPotentialModel(n, std::move(tie), std::move(order));
  };
  PairPotentialModel base = build([&](ItemId i) { return p.u[i]; });
  std::vector<PairPotentialModel> hidden;
  hidden.reserve(p.K);
  for (std::size_t k = 0; k < p.K; ++k) hidden.push_back(build([&](ItemId i) { return p.w(i, k); }));
  return LatentModel(std::move(base), std::move(hidden));
}

LatentModel cf_latent_model(const CFParams& p) {
  std::vector<ItemId> all(p.n_items());
  std::iota(all.begin(), all.end(), ItemId{0});
  return cf_latent_model(p, all);
}

std::vector<double> cf_object_coefficients(const OrderedPartition& x) {
  std::vector<double> c(x.n_objects(), 0.0);
  std::size_t below = x.n_objects();
  for (const auto& b : x.blocks()) {
    below -= b.size();
    const double v = 0.5 * static_cast<double>(b.size() - 1) + static_cast<double>(below);
    for (Object o : b) c[o] = v;
  }
  return c;
}

double cf_log_weight(const CFParams& p, std::span<const ItemId> items, const OrderedPartition& x) {
  const auto c = cf_object_coefficients(x);
  double total = p.nu * n_tie_pairs(x);
  for (std::size_t o = 0; o < c.size(); ++o) total += c[o] * p.u[items[o]];
  return total;
}

std::vector<double> cf_log_omegas(const CFParams& p, std::span<const ItemId> items,
                                  const OrderedPartition& x) {
  const auto c = cf_object_coefficients(x);
  const double nu_part = p.nu * n_tie_pairs(x);
  std::vector<double> out(p.K, nu_part);
  for (std::size_t o = 0; o < c.size(); ++o) {
    const double* row = &p.W[items[o] * p.K];
    for (std::size_t k = 0; k < p.K; ++k) out[k] += c[o] * row[k];
  }
  return out;
}

std::vector<double> cf_hidden_posterior(const CFParams& p, std::span<const ItemId> items,
                                        const OrderedPartition& x) {
  auto out = cf_log_omegas(p, items, x);
  for (auto& v : out) v = logistic(v);
  return out;
}

PairPotentialModel cf_effective_pair_model(const CFParams& p, std::span<const ItemId> items,
                                           std::span<const double> h) {
  if (h.size() != p.K) throw std::invalid_argument("cf_effective_pair_model: hidden size mismatch");
  const std::size_t n = items.size();
  const double nu_eff = p.nu * (1.0 + std::accumulate(h.begin(), h.end(), 0.0));
  std::vector<double> worth(n);
  for (std::size_t o = 0; o < n; ++o) {
    double v = p.u[items[o]];
    const double* row = &p.W[items[o] * p.K];
    for (std::size_t k = 0; k < p.K; ++k) v += h[k] * row[k];
    worth[o] = v;
  }
  std::vector<double> tie(n * n, 0.0), order(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      tie[a * n + b] = nu_eff + 0.5 * (worth[a] + worth[b]);
      order[a * n + b] = worth[a];
    }
  }
  return PairPotentialModel(n, std::move(tie), std::move(order));
}

GradientEstimate GradientEstimate::zeros(std::size_t n_items, std::size_t K) {
  GradientEstimate g;
  g.d_u.assign(n_items, 0.0);
  g.d_W.assign(n_items * K, 0.0);
  g.K = K;
  return g;
}

double GradientEstimate::max_abs() const {
  double m = std::abs(d_nu);
  for (double v : d_u) m = std::max(m, std::abs(v));
  for (double v : d_W) m = std::max(m, std::abs(v));
  return m;
}

double GradientEstimate::norm() const {
  double s = d_nu * d_nu;
  for (double v : d_u) s += v * v;
  for (double v : d_W) s += v * v;
  return std::sqrt(s);
}

void accumulate_sufficient_stats(GradientEstimate& acc, const OrderedPartition& x,
                                 std::span<const ItemId> items, std::span<const double> h,
                                 double weight) {
  if (h.size() != acc.K) throw std::invalid_argument("sufficient stats: hidden size mismatch");
  if (items.size() != x.n_objects()) throw std::invalid_argument("sufficient stats: item count mismatch");
  const auto c = cf_object_coefficients(x);
  acc.d_nu += weight * n_tie_pairs(x) * (1.0 + std::accumulate(h.begin(), h.end(), 0.0));
  for (std::size_t o = 0; o < c.size(); ++o) {
    const ItemId i = items[o];
    if (i >= acc.d_u.size()) throw std::invalid_argument("sufficient stats: item out of range");
    acc.d_u[i] += weight * c[o];
    double* row = &acc.d_W[i * acc.K];
    for (std::size_t k = 0; k < acc.K; ++k) row[k] += weight * c[o] * h[k];
  }
}

GradientEstimate sufficient_stats(const OrderedPartition& x, std::span<const ItemId> items,
                                  std::span<const double> h, std::size_t n_items, std::size_t K) {
  auto g = GradientEstimate::zeros(n_items, K);
  accumulate_sufficient_stats(g, x, items, h);
  return g;
}

GradientEstimate estimate_gradient(std::span<const StatePoint> observed,
                                   std::span<const StatePoint> model_samples, std::size_t n_items,
                                   std::size_t K) {
  if (observed.empty() || model_samples.empty()) {
    throw std::invalid_argument("estimate_gradient: empty observed or model sample set");
  }
  auto g = GradientEstimate::zeros(n_items, K);
  const double wo = 1.0 / static_cast<double>(observed.size());
  const double wm = 1.0 / static_cast<double>(model_samples.size());
  for (const auto& s : observed) accumulate_sufficient_stats(g, s.partition, s.items, s.hidden, wo);
  for (const auto& s : model_samples) accumulate_sufficient_stats(g, s.partition, s.items, s.hidden, -wm);
  g.n_data_terms = observed.size();
  g.n_model_samples = model_samples.size();
  return g;
}

double exact_log_likelihood(const CFParams& p, std::span<const UserRanking> data, std::size_t cap) {
  if (data.empty()) throw std::invalid_argument("exact_log_likelihood: no data");
  std::map<std::vector<ItemId>, double> log_z;
  double total = 0.0;
  for (const auto& user : data) {
    check_items(p, user.items);
    auto it = log_z.find(user.items);
    if (it == log_z.end()) {
      std::vector<double> terms;
      for_each_ordered_partition(
          user.items.size(),
          [&](const OrderedPartition& x) { terms.push_back(cf_log_marginal(p, user.items, x, nullptr)); },
          cap);
      it = log_z.emplace(user.items, log_sum_exp(terms)).first;
    }
    total += cf_log_marginal(p, user.items, user.partition, nullptr) - it->second;
  }
  return total / static_cast<double>(data.size());
}

GradientEstimate exact_gradient(const CFParams& p, std::span<const UserRanking> data, std::size_t cap) {
  if (data.empty()) throw std::invalid_argument("exact_gradient: no data");
  auto g = GradientEstimate::zeros(p.n_items(), p.K);
  const double w = 1.0 / static_cast<double>(data.size());
  std::map<std::vector<ItemId>, std::size_t> set_counts;
  std::vector<double> post;
  for (const auto& user : data) {
    check_items(p, user.items);
    cf_log_marginal(p, user.items, user.partition, &post);
    accumulate_sufficient_stats(g, user.partition, user.items, post, w);
    ++set_counts[user.items];
  }
  for (const auto& [items, count] : set_counts) {
    std::vector<OrderedPartition> states;
    std::vector<double> log_p;
    for_each_ordered_partition(
        items.size(),
        [&](const OrderedPartition& x) {
          states.push_back(x);
          log_p.push_back(cf_log_marginal(p, items, x, nullptr));
        },
        cap);
    const double lz = log_sum_exp(log_p);
    const double weight = w * static_cast<double>(count);
    for (std::size_t s = 0; s < states.size(); ++s) {
      cf_log_marginal(p, items, states[s], &post);
      accumulate_sufficient_stats(g, states[s], items, post, -weight * std::exp(log_p[s] - lz));
    }
  }
  g.n_data_terms = data.size();
  return g;
}

double pairwise_disagreement(const OrderedPartition& a, const OrderedPartition& b) {
  if (a.n_objects() != b.n_objects()) throw std::invalid_argument("pairwise_disagreement: size mismatch");
  const std::size_t n = a.n_objects();
  if (n < 2) return 0.0;
  const auto ba = a.block_of();
  const auto bb = b.block_of();
  std::size_t diff = 0;
  for (Object i = 0; i < n; ++i) {
    for (Object j = i + 1; j < n; ++j) {
      if (pair_relation(ba, i, j) != pair_relation(bb, i, j)) ++diff;
    }
  }
  return static_cast<double>(diff) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

TrainResult train(std::span<const UserRanking> data, std::size_t n_items, const TrainConfig& cfg,
                  const BlockCallback& on_block) {
  Rng init_rng = make_rng(cfg.seed, 0);
  return train(data, CFParams::random_init(n_items, cfg.K, init_rng, cfg.init_scale), cfg, on_block);
}

TrainResult train(std::span<const UserRanking> data, CFParams init, const TrainConfig& cfg,
                  const BlockCallback& on_block) {
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be > 0");
  if (cfg.block_size == 0) throw std::invalid_argument("train: block size must be >= 1");
  init.validate();
  if (init.K != cfg.K) throw std::invalid_argument("train: initial params K differs from config");

  TrainResult result;
  result.params = std::move(init);
  CFParams& p = result.params;

  std::vector<std::size_t> users;
  for (std::size_t u = 0; u < data.size(); ++u) {
    const auto& d = data[u];
    if (d.items.size() < 2 || d.partition.n_objects() != d.items.size()) {
      ++result.skipped_users;
      continue;
    }
    check_items(p, d.items);
    users.push_back(u);
  }
  if (cfg.epochs == 0 || users.empty()) return result;

  // Chain i follows data[users[i]]; streams 1.. are per-user, 0 is for init
  // and shuffling.
  std::vector<LatentChainState> chains;
  chains.reserve(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    chains.emplace_back(data[users[i]].partition, p.K, make_rng(cfg.seed, 1 + users[i]));
  }
  Rng shuffle_rng = make_rng(cfg.seed, 0);
  shuffle_rng.discard(1000);
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::size_t block_counter = 0;
  std::vector<double> post;
  std::vector<double> h;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.block_size) {
      const std::size_t end = std::min(order.size(), start + cfg.block_size);
      const std::size_t m = end - start;
      std::vector<MoveStats> before(m);
      parallel_for(m, cfg.threads, [&](std::size_t b) {
        auto& chain = chains[order[start + b]];
        before[b] = chain.chain.stats;
        const auto& items = data[users[order[start + b]]].items;
        for (std::size_t s = 0; s < cfg.chain_steps_per_update; ++s) cf_sweep(chain, p, items);
      });

      auto g = GradientEstimate::zeros(p.n_items(), p.K);
      const double w = 1.0 / static_cast<double>(m);
      BlockLog log;
      log.epoch = epoch;
      log.block = block_counter++;
      log.users = m;
      MoveStats delta;
      for (std::size_t b = 0; b < m; ++b) {
        const auto& chain = chains[order[start + b]];
        const auto& user = data[users[order[start + b]]];
        cf_log_marginal(p, user.items, user.partition, &post);
        accumulate_sufficient_stats(g, user.partition, user.items, post, w);
        h.assign(chain.hidden.begin(), chain.hidden.end());
        accumulate_sufficient_stats(g, chain.chain.partition, user.items, h, -w);
        log.disagreement += w * pairwise_disagreement(chain.chain.partition, user.partition);
        MoveStats d = chain.chain.stats;
        d.split_proposed -= before[b].split_proposed;
        d.split_accepted -= before[b].split_accepted;
        d.merge_proposed -= before[b].merge_proposed;
        d.merge_accepted -= before[b].merge_accepted;
        d.idle -= before[b].idle;
        delta += d;
      }
      log.split_acceptance = delta.split_acceptance_rate();
      log.merge_acceptance = delta.merge_acceptance_rate();

      const double lr = cfg.learning_rate;
      p.nu += lr * (g.d_nu - cfg.l2 * p.nu);
      for (std::size_t i = 0; i < p.u.size(); ++i) p.u[i] += lr * (g.d_u[i] - cfg.l2 * p.u[i]);
      for (std::size_t i = 0; i < p.W.size(); ++i) p.W[i] += lr * (g.d_W[i] - cfg.l2 * p.W[i]);

      result.log.push_back(log);
      if (on_block) on_block(log, p);
    }
  }
  return result;
}

}  // namespace osm
