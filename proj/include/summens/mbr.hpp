#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "summens/losses.hpp"

namespace summens {

// Finished candidate texts entering a consensus selection. Duplicates
// are permitted and meaningful (they shift the consensus). provenance
// holds the producing system per candidate (may be empty).
struct CandidatePool {
  std::vector<std::string> texts;
  std::vector<std::string> provenance;

  std::size_t size() const { return texts.size(); }
};

struct MbrResult {
  std::size_t selected_index = 0;
  std::vector<double> consensus_scores;           // sum over pool rewards, self term included
  std::vector<std::vector<double>> reward_matrix; // entry (i, j) = reward(text_i, text_j)
};

// Full N x N matrix; entry (i, j) treats candidate i as the hypothesis
// and candidate j as the reference. The diagonal is included. F1 rewards
// are symmetric but precision/recall are not, so the whole matrix is
// computed. Requires a non-empty pool.
std::vector<std::vector<double>> reward_matrix(const CandidatePool& pool, const RewardSpec& reward);

// Equiprobable consensus selection: picks the candidate maximizing the
// row sum of the reward matrix (self term included); ties resolve to the
// smallest index.
MbrResult mbr_select(const CandidatePool& pool, const RewardSpec& reward);

}  // namespace summens
