#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "osm/combinatorics.hpp"
#include "osm/latent.hpp"
#include "osm/learning.hpp"
#include "osm/partition_fn.hpp"
#include "osm/potentials.hpp"
#include "osm/rng.hpp"
#include "osm/sampler.hpp"

namespace {

osm::PairPotentialModel random_model(std::size_t n, osm::Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> tie(n * n, 0.0), order(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      order[i * n + j] = u(rng);
      if (i < j) tie[i * n + j] = tie[j * n + i] = u(rng);
    }
  }
  return osm::PairPotentialModel(n, std::move(tie), std::move(order));
}

osm::CFParams random_params(std::size_t items, std::size_t K, osm::Rng& rng) {
  auto p = osm::CFParams::random_init(items, K, rng, 1.0);
  p.nu = -0.5;
  return p;
}

void BM_LogWeight(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto rng = osm::make_rng(1);
  const auto m = random_model(n, rng);
  const auto x = osm::UniformPartitionSampler(n)(rng);
  for (auto _ : st) benchmark::DoNotOptimize(osm::log_weight(x, m));
}
BENCHMARK(BM_LogWeight)->Arg(10)->Arg(50)->Arg(200);

void BM_MhStep(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto rng = osm::make_rng(2);
  const auto m = random_model(n, rng);
  osm::ChainState c(osm::OrderedPartition::all_singletons(n), osm::make_rng(3));
  for (auto _ : st) benchmark::DoNotOptimize(osm::mh_step(c, m));
}
BENCHMARK(BM_MhStep)->Arg(10)->Arg(50)->Arg(200);

// one persistent-chain update for a user with n rated items out of 1000
void BM_GibbsSweepCF(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto K = static_cast<std::size_t>(st.range(1));
  auto rng = osm::make_rng(4);
  const auto p = random_params(1000, K, rng);
  std::vector<osm::ItemId> items(n);
  for (std::size_t i = 0; i < n; ++i) items[i] = i * 7;
  const auto m = osm::cf_latent_model(p, items);
  osm::LatentChainState s(osm::OrderedPartition::all_singletons(n), K, osm::make_rng(5));
  for (auto _ : st) osm::gibbs_mh_step(s, m);
}
BENCHMARK(BM_GibbsSweepCF)->Args({10, 10})->Args({30, 10})->Args({30, 50});

void BM_AIS(benchmark::State& st) {
  auto rng = osm::make_rng(6);
  const auto p = random_params(6, 2, rng);
  const auto m = osm::cf_latent_model(p);
  osm::AISConfig cfg;
  cfg.n_temperatures = static_cast<std::size_t>(st.range(0));
  cfg.n_runs = 10;
  for (auto _ : st) benchmark::DoNotOptimize(osm::ais_log_z(m, cfg).log_z_estimate);
}
BENCHMARK(BM_AIS)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
