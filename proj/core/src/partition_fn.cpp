#include "osm/partition_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "osm/parallel.hpp"
#include "osm/rng.hpp"

namespace osm {

namespace {

double log1p_exp(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

double log_big(const BigCount& c) {
  using boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(boost::multiprecision::log(cpp_bin_float_50(c)));
}

template <typename Sum>
double log_sum_over_states(std::size_t n, std::size_t cap, Sum&& term) {
  std::vector<double> terms;
  for_each_ordered_partition(n, [&](const OrderedPartition& x) { terms.push_back(term(x)); }, cap);
  return log_sum_exp(terms);
}

void validate(const AISConfig& cfg) {
  if (cfg.n_temperatures < 2) throw std::invalid_argument("AIS: need at least 2 temperatures");
  if (cfg.n_runs < 1) throw std::invalid_argument("AIS: need at least 1 run");
}

// One annealing run on the plain model.
double ais_run(const PairPotentialModel& m, const std::vector<double>& taus, std::size_t inner,
               const UniformPartitionSampler& uniform, Rng rng) {
  ChainState state(uniform(rng), std::move(rng));
  double log_w = 0.0;
  for (std::size_t s = 1; s < taus.size(); ++s) {
    if (s > 1) {
      for (std::size_t i = 0; i < inner; ++i) mh_step(state, m, taus[s - 1]);
    }
    log_w += (taus[s] - taus[s - 1]) * log_weight(state.partition, m);
  }
  return log_w;
}

double ais_run(const LatentModel& m, const std::vector<double>& taus, std::size_t inner,
               const UniformPartitionSampler& uniform, Rng rng) {
  LatentChainState state(uniform(rng), m.n_hidden(), std::move(rng));
  double log_w = 0.0;
  for (std::size_t s = 1; s < taus.size(); ++s) {
    if (s > 1) gibbs_mh_step(state, m, inner, taus[s - 1]);
    log_w += annealed_unnorm_log_prob(state.chain.partition, taus[s], m) -
             annealed_unnorm_log_prob(state.chain.partition, taus[s - 1], m);
  }
  return log_w;
}

template <typename Model>
AISResult run_ais(const Model& m, const AISConfig& cfg, double log_z0) {
  validate(cfg);
  const auto taus = temperature_schedule(cfg.n_temperatures, cfg.schedule);
  const std::size_t n = m.n_objects();
  const std::size_t inner =
      cfg.inner_steps_per_temperature ? cfg.inner_steps_per_temperature : std::max<std::size_t>(1, n);
  const UniformPartitionSampler uniform(n);
  AISResult out;
  out.log_z0 = log_z0;
  out.log_weights.resize(cfg.n_runs);
  parallel_for(cfg.n_runs, cfg.threads, [&](std::size_t r) {
    out.log_weights[r] = ais_run(m, taus, inner, uniform, make_rng(cfg.seed, r));
  });
  out.log_z_estimate = log_z0 + log_mean_exp(out.log_weights);
  out.effective_sample_size = effective_sample_size(out.log_weights);
  return out;
}

}  // namespace

double exact_log_z(const PairPotentialModel& m, std::size_t cap) {
  return log_sum_over_states(m.n_objects(), cap,
                             [&](const OrderedPartition& x) { return log_weight(x, m); });
}

double exact_log_z(const LatentModel& m, std::size_t cap) {
  return log_sum_over_states(m.n_objects(), cap, [&](const OrderedPartition& x) {
    return annealed_unnorm_log_prob(x, 1.0, m);
  });
}

double annealed_unnorm_log_prob(const OrderedPartition& x, double tau, const PairPotentialModel& m) {
  if (tau == 0.0) return 0.0;
  return tau * log_weight(x, m);
}

double annealed_unnorm_log_prob(const OrderedPartition& x, double tau, const LatentModel& m) {
  double total = tau == 0.0 ? 0.0 : tau * log_weight(x, m.base());
  for (std::size_t k = 0; k < m.n_hidden(); ++k) {
    total += tau == 0.0 ? std::numbers::ln2 : log1p_exp(tau * log_weight(x, m.hidden(k)));
  }
  return total;
}

std::vector<double> temperature_schedule(std::size_t n_temperatures, Schedule schedule) {
  if (n_temperatures < 2) throw std::invalid_argument("temperature schedule: need S >= 2");
  std::vector<double> taus(n_temperatures + 1);
  const double s_max = static_cast<double>(n_temperatures);
  for (std::size_t s = 0; s <= n_temperatures; ++s) {
    const double sd = static_cast<double>(s);
    if (s == 0) {
      taus[s] = 0.0;
    } else if (schedule == Schedule::linear) {
      taus[s] = sd / s_max;
    } else {
      constexpr double kLogMinTau = -6.907755278982137;  // log(1e-3)
      taus[s] = std::exp(kLogMinTau * (s_max - sd) / (s_max - 1.0));
    }
  }
  taus.back() = 1.0;
  return taus;
}

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double mx = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

double log_mean_exp(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("log_mean_exp: empty input");
  return log_sum_exp(v) - std::log(static_cast<double>(v.size()));
}

double effective_sample_size(std::span<const double> log_weights) {
  if (log_weights.empty()) return 0.0;
  std::vector<double> twice(log_weights.begin(), log_weights.end());
  for (auto& v : twice) v *= 2.0;
  return std::exp(2.0 * log_sum_exp(log_weights) - log_sum_exp(twice));
}

AISResult ais_log_z(const PairPotentialModel& m, const AISConfig& cfg) {
  return run_ais(m, cfg, log_big(fubini(m.n_objects())));
}

AISResult ais_log_z(const LatentModel& m, const AISConfig& cfg) {
  const double log_z0 =
      log_big(fubini(m.n_objects())) + static_cast<double>(m.n_hidden()) * std::numbers::ln2;
  return run_ais(m, cfg, log_z0);
}

}  // namespace osm
