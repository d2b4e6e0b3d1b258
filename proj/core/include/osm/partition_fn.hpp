#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "osm/combinatorics.hpp"
#include "osm/latent.hpp"
#include "osm/potentials.hpp"

namespace osm {

// log Z by summing over every ordered partition. The latent version sums
// Omega(X) prod_k (1 + Omega_k(X)), which marginalizes h analytically.
double exact_log_z(const PairPotentialModel& m, std::size_t cap = kDefaultEnumerationCap);
double exact_log_z(const LatentModel& m, std::size_t cap = kDefaultEnumerationCap);

// log P*(X | tau): tau log Omega(X), plus sum_k log(1 + Omega_k(X)^tau) for
// the latent model.
double annealed_unnorm_log_prob(const OrderedPartition& x, double tau, const PairPotentialModel& m);
double annealed_unnorm_log_prob(const OrderedPartition& x, double tau, const LatentModel& m);

enum class Schedule { linear, geometric };

struct AISConfig {
  // Number of annealing intervals S; the ladder has S+1 temperatures.
  std::size_t n_temperatures = 1000;
  std::size_t n_runs = 10;
  Schedule schedule = Schedule::linear;
  // MH steps per temperature; 0 means one per object.
  std::size_t inner_steps_per_temperature = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct AISResult {
  double log_z_estimate = 0.0;
  std::vector<double> log_weights;
  double log_z0 = 0.0;
  double effective_sample_size = 0.0;
};

// tau_0 = 0 < tau_1 < ... < tau_S = 1. The geometric ladder spaces
// tau_1..tau_S evenly in log between 1e-3 and 1.
std::vector<double> temperature_schedule(std::size_t n_temperatures, Schedule schedule);

double log_sum_exp(std::span<const double> v);
double log_mean_exp(std::span<const double> v);
// (sum w)^2 / sum w^2, from log weights.
double effective_sample_size(std::span<const double> log_weights);

// Annealed importance sampling from the uniform distribution at tau = 0.
// Runs are independent streams of cfg.seed and may execute concurrently.
AISResult ais_log_z(const PairPotentialModel& m, const AISConfig& cfg);
AISResult ais_log_z(const LatentModel& m, const AISConfig& cfg);

}  // namespace osm
