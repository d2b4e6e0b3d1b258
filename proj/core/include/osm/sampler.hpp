#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "osm/ordered_partition.hpp"
#include "osm/potentials.hpp"
#include "osm/rng.hpp"

namespace osm {

enum class MoveKind { split, merge };

// A split or merge candidate with the three log factors of its
// Metropolis-Hastings acceptance ratio.
struct MoveProposal {
  MoveKind kind = MoveKind::split;
  std::size_t block_index = 0;
  std::optional<Bipartition> bipartition;  // present iff kind == split
  // log Q(X | X') / Q(X' | X) given the move kind.
  double log_q_ratio = 0.0;
  // log Omega(X') / Omega(X).
  double log_l_ratio = 0.0;
  // log of P(reverse kind chosen at X') / P(this kind chosen at X).
  double log_type_ratio = 0.0;

  // log of l * p at inverse temperature tau.
  double log_acceptance(double tau = 1.0) const { return tau * log_l_ratio + log_q_ratio + log_type_ratio; }
};

bool split_feasible(const OrderedPartition& x);
bool merge_feasible(const OrderedPartition& x);

// Probability that a step at x attempts `kind`: 1/2 when both kinds are
// feasible, 1 when only this one is, 0 when it is infeasible.
double move_kind_probability(const OrderedPartition& x, MoveKind kind);

// log p_split for turning block t of x into sides of sizes (n_upper, n_lower).
// The forward draw produces a given ordered bipartition with probability
// n_upper * n_lower / (N (N-1) 2^(N-2)) after picking one of the T_split
// non-singleton blocks; the reverse merge picks one of T consecutive pairs.
double log_split_proposal_ratio(const OrderedPartition& x, std::size_t t, std::size_t n_upper,
                                std::size_t n_lower);

// log p_merge for merging blocks t and t+1 of x.
double log_merge_proposal_ratio(const OrderedPartition& x, std::size_t t);

// Deterministic proposal construction (no randomness).
MoveProposal make_split_proposal(const OrderedPartition& x, std::size_t t, Bipartition sides,
                                 const PairPotentialModel& m);
MoveProposal make_merge_proposal(const OrderedPartition& x, std::size_t t,
                                 const PairPotentialModel& m);

OrderedPartition apply_move(const OrderedPartition& x, const MoveProposal& move);

// Random proposals. std::nullopt when the move kind is infeasible at x.
std::optional<MoveProposal> propose_split(const OrderedPartition& x, const PairPotentialModel& m,
                                          Rng& rng);
std::optional<MoveProposal> propose_merge(const OrderedPartition& x, const PairPotentialModel& m,
                                          Rng& rng);

struct MoveStats {
  std::uint64_t split_proposed = 0;
  std::uint64_t split_accepted = 0;
  std::uint64_t merge_proposed = 0;
  std::uint64_t merge_accepted = 0;
  // Steps at which no move was possible (a single object).
  std::uint64_t idle = 0;

  double split_acceptance_rate() const;
  double merge_acceptance_rate() const;
  MoveStats& operator+=(const MoveStats& o);
};

struct ChainState {
  OrderedPartition partition;
  Rng rng;
  MoveStats stats;
  std::uint64_t step = 0;

  ChainState(OrderedPartition x, Rng r) : partition(std::move(x)), rng(std::move(r)) {}
};

// One split-or-merge Metropolis-Hastings step targeting Omega(X)^tau.
// Returns true when the proposal was accepted.
bool mh_step(ChainState& state, const PairPotentialModel& m, double tau = 1.0);

struct SamplerConfig {
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 10;
  std::uint64_t seed = 0;

  // burn_in = 10% of steps, thin = 10.
  static SamplerConfig with_defaults(std::uint64_t steps, std::uint64_t seed);
};

struct ChainResult {
  std::vector<OrderedPartition> samples;
  MoveStats stats;
};

// Runs `steps` MH steps from init; the state after step s (0-based) is kept
// when s >= burn_in and (s - burn_in) % thin == 0.
ChainResult run_chain(const OrderedPartition& init, const PairPotentialModel& m,
                      const SamplerConfig& cfg);

}  // namespace osm
