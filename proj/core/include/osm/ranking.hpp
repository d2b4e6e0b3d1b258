#pragma once

#include <span>
#include <vector>

#include "osm/latent.hpp"
#include "osm/learning.hpp"

namespace osm {

// Items in decreasing predicted preference, with their scores.
struct RankedList {
  std::vector<ItemId> items;
  std::vector<double> scores;
};

// Sorts by score descending; equal scores go in ascending item order.
RankedList rank_by_scores(std::span<const ItemId> items, std::span<const double> scores);

// Mean-field rank completion on a generic latent model. The model's objects
// are the seen items (local 0..s-1, matching seen.partition) followed by the
// unseen items in the given order. score(j) = sum over seen i of
// log psi(j > i) + sum_k P(h_k = 1 | seen) log psi_k(j > i).
RankedList complete_rank(const UserRanking& seen, std::span<const ItemId> unseen, const LatentModel& m);

// CF form of the same score: |seen| (u_j + sum_k P(h_k = 1 | seen) W_jk).
RankedList complete_rank(const CFParams& p, const UserRanking& seen, std::span<const ItemId> unseen);

// Complete ranking from a posterior vector: score(j) = u_j + sum_k posterior_k W_jk.
RankedList reconstruct_rank(std::span<const double> posterior, std::span<const ItemId> items,
                            const CFParams& p);

}  // namespace osm
