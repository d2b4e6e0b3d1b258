#include "osm/sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace osm {

namespace {

double log_seed_draw_count(std::size_t n) {
  // log(N (N-1) 2^(N-2))
  const double nn = static_cast<double>(n);
  return std::log(nn) + std::log(nn - 1.0) + (nn - 2.0) * std::numbers::ln2;
}

bool accept(double log_acc, Rng& rng) {
  if (log_acc >= 0.0) return true;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return unif(rng) < std::exp(log_acc);
}

}  // namespace

bool split_feasible(const OrderedPartition& x) {
  for (const auto& b : x.blocks()) {
    if (b.size() > 1) return true;
  }
  return false;
}

bool merge_feasible(const OrderedPartition& x) { return x.n_blocks() >= 2; }

double move_kind_probability(const OrderedPartition& x, MoveKind kind) {
  const bool s = split_feasible(x);
  const bool m = merge_feasible(x);
  const bool self = kind == MoveKind::split ? s : m;
  if (!self) return 0.0;
  return (s && m) ? 0.5 : 1.0;
}

double log_split_proposal_ratio(const OrderedPartition& x, std::size_t t, std::size_t n_upper,
                                std::size_t n_lower) {
  const std::size_t n = n_upper + n_lower;
  if (t >= x.n_blocks() || n != x.block(t).size() || n_upper == 0 || n_lower == 0) {
    throw std::invalid_argument("split proposal ratio: invalid bipartition sizes");
  }
  const double t_split = static_cast<double>(x.n_non_singleton_blocks());
  const double t_blocks = static_cast<double>(x.n_blocks());
  return std::log(t_split) + log_seed_draw_count(n) -
         std::log(static_cast<double>(n_upper) * static_cast<double>(n_lower)) - std::log(t_blocks);
}

double log_merge_proposal_ratio(const OrderedPartition& x, std::size_t t) {
  if (t + 1 >= x.n_blocks()) throw std::invalid_argument("merge proposal ratio: t is the last block");
  const std::size_t a = x.block(t).size();
  const std::size_t b = x.block(t + 1).size();
  const std::size_t merged = a + b;
  const std::size_t t_merge =
      x.n_non_singleton_blocks() - (a > 1 ? 1 : 0) - (b > 1 ? 1 : 0) + 1;
  const double t_blocks = static_cast<double>(x.n_blocks());
  return std::log(t_blocks - 1.0) + std::log(static_cast<double>(a) * static_cast<double>(b)) -
         std::log(static_cast<double>(t_merge)) - log_seed_draw_count(merged);
}

MoveProposal make_split_proposal(const OrderedPartition& x, std::size_t t, Bipartition sides,
                                 const PairPotentialModel& m) {
  MoveProposal p;
  p.kind = MoveKind::split;
  p.block_index = t;
  p.log_l_ratio = log_ratio_split(x, t, sides, m);
  p.log_q_ratio = log_split_proposal_ratio(x, t, sides.upper.size(), sides.lower.size());
  // After a split there are at least two blocks, so merge is feasible there;
  // split stays feasible iff some block still has two or more members.
  bool split_after = sides.upper.size() > 1 || sides.lower.size() > 1;
  if (!split_after) {
    for (std::size_t s = 0; s < x.n_blocks() && !split_after; ++s) {
      split_after = s != t && x.block(s).size() > 1;
    }
  }
  const double reverse = split_after ? 0.5 : 1.0;
  p.log_type_ratio = std::log(reverse) - std::log(move_kind_probability(x, MoveKind::split));
  p.bipartition = std::move(sides);
  return p;
}

MoveProposal make_merge_proposal(const OrderedPartition& x, std::size_t t,
                                 const PairPotentialModel& m) {
  MoveProposal p;
  p.kind = MoveKind::merge;
  p.block_index = t;
  p.log_l_ratio = log_ratio_merge(x, t, m);
  p.log_q_ratio = log_merge_proposal_ratio(x, t);
  // After a merge a non-singleton block exists, so split is feasible there.
  const double reverse = x.n_blocks() - 1 >= 2 ? 0.5 : 1.0;
  p.log_type_ratio = std::log(reverse) - std::log(move_kind_probability(x, MoveKind::merge));
  return p;
}

OrderedPartition apply_move(const OrderedPartition& x, const MoveProposal& move) {
  if (move.kind == MoveKind::merge) return x.merged(move.block_index);
  if (!move.bipartition) throw std::invalid_argument("apply_move: split without bipartition");
  return x.split(move.block_index, move.bipartition->upper, move.bipartition->lower);
}

std::optional<MoveProposal> propose_split(const OrderedPartition& x, const PairPotentialModel& m,
                                          Rng& rng) {
  const std::size_t candidates = x.n_non_singleton_blocks();
  if (candidates == 0) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick_block(0, candidates - 1);
  std::size_t target = pick_block(rng);
  std::size_t t = 0;
  for (; t < x.n_blocks(); ++t) {
    if (x.block(t).size() > 1 && target-- == 0) break;
  }
  const auto& block = x.block(t);
  const std::size_t n = block.size();
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  const std::size_t s1 = first(rng);
  std::size_t s2 = second(rng);
  if (s2 >= s1) ++s2;
  Bipartition sides;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == s1) {
      sides.upper.push_back(block[i]);
    } else if (i == s2) {
      sides.lower.push_back(block[i]);
    } else if (coin(rng)) {
      sides.upper.push_back(block[i]);
    } else {
      sides.lower.push_back(block[i]);
    }
  }
  return make_split_proposal(x, t, std::move(sides), m);
}

std::optional<MoveProposal> propose_merge(const OrderedPartition& x, const PairPotentialModel& m,
                                          Rng& rng) {
  if (!merge_feasible(x)) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, x.n_blocks() - 2);
  return make_merge_proposal(x, pick(rng), m);
}

double MoveStats::split_acceptance_rate() const {
  return split_proposed ? static_cast<double>(split_accepted) / static_cast<double>(split_proposed) : 0.0;
}

double MoveStats::merge_acceptance_rate() const {
  return merge_proposed ? static_cast<double>(merge_accepted) / static_cast<double>(merge_proposed) : 0.0;
}

MoveStats& MoveStats::operator+=(const MoveStats& o) {
  split_proposed += o.split_proposed;
  split_accepted += o.split_accepted;
  merge_proposed += o.merge_proposed;
  merge_accepted += o.merge_accepted;
  idle += o.idle;
  return *this;
}

bool mh_step(ChainState& state, const PairPotentialModel& m, double tau) {
  ++state.step;
  const auto& x = state.partition;
  const bool can_split = split_feasible(x);
  const bool can_merge = merge_feasible(x);
  if (!can_split && !can_merge) {
    ++state.stats.idle;
    return false;
  }
  MoveKind kind = can_split ? MoveKind::split : MoveKind::merge;
  if (can_split && can_merge) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    kind = unif(state.rng) < 0.5 ? MoveKind::split : MoveKind::merge;
  }
  auto proposal = kind == MoveKind::split ? propose_split(x, m, state.rng)
                                          : propose_merge(x, m, state.rng);
  auto& proposed = kind == MoveKind::split ? state.stats.split_proposed : state.stats.merge_proposed;
  auto& accepted = kind == MoveKind::split ? state.stats.split_accepted : state.stats.merge_accepted;
  ++proposed;
  if (!accept(proposal->log_acceptance(tau), state.rng)) return false;
  state.partition = apply_move(x, *proposal);
  ++accepted;
  return true;
}

SamplerConfig SamplerConfig::with_defaults(std::uint64_t steps, std::uint64_t seed) {
  return SamplerConfig{steps, steps / 10, 10, seed};
}

ChainResult run_chain(const OrderedPartition& init, const PairPotentialModel& m,
                      const SamplerConfig& cfg) {
  if (cfg.thin == 0) throw std::invalid_argument("run_chain: thin must be >= 1");
  if (init.n_objects() != m.n_objects()) {
    throw std::invalid_argument("run_chain: initial state does not match the model");
  }
  ChainState state(init, make_rng(cfg.seed));
  ChainResult out;
  for (std::uint64_t s = 0; s < cfg.steps; ++s) {
    mh_step(state, m);
    if (s >= cfg.burn_in && (s - cfg.burn_in) % cfg.thin == 0) out.samples.push_back(state.partition);
  }
  out.stats = state.stats;
  return out;
}

}  // namespace osm
