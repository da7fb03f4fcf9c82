#include "summens/mbr.hpp"

#include <stdexcept>

namespace summens {

std::vector<std::vector<double>> reward_matrix(const CandidatePool& pool,
                                               const RewardSpec& spec) {
  if (pool.texts.empty()) throw std::invalid_argument("reward_matrix: empty pool");
  const std::size_t n = pool.texts.size();

  // Tokenize once per candidate; each entry scores candidate i as the
  // hypothesis against candidate j as the reference.
  std::vector<TokenSeq> tokens;
  tokens.reserve(n);
  for (const auto& text : pool.texts) tokens.push_back(tokenize(text));

  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RougeScore score = spec.variant.kind == RougeVariant::Kind::kLcs
                                   ? rouge_l(tokens[i], tokens[j])
                                   : rouge_n(tokens[i], tokens[j], spec.variant.order);
      matrix[i][j] = reward_value(score, spec.field);
    }
  }
  return matrix;
}

MbrResult mbr_select(const CandidatePool& pool, const RewardSpec& spec) {
  MbrResult result;
  result.reward_matrix = reward_matrix(pool, spec);
  const std::size_t n = pool.texts.size();
  result.consensus_scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += result.reward_matrix[i][j];
    result.consensus_scores[i] = sum;
  }
  result.selected_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (result.consensus_scores[i] > result.consensus_scores[result.selected_index]) {
      result.selected_index = i;
    }
  }
  return result;
}

}  // namespace summens
