#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "summens/model.hpp"

namespace summens {

// Structural hyperparameters of a copy-mixture n-gram summarizer.
struct CopyMixConfig {
  int order = 3;          // backoff n-gram order K >= 1
  double alpha = 0.1;     // add-alpha smoothing at the unigram floor, > 0
  double eos_share = 0.1; // fixed EOS mass inside the copy distribution

  bool operator==(const CopyMixConfig&) const = default;
};

struct TrainOptions {
  CopyMixConfig config;
  std::vector<double> lambda_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
};

// Per-context continuation counts for one n-gram order. std::map keeps
// iteration deterministic for serialization and averaging.
struct ContextCounts {
  double total = 0.0;
  std::map<TokenId, double> next;
};
using ContextTable = std::map<TokenIds, ContextCounts>;

// Trainable toy summarizer: a mixture of a copy distribution over the
// input's content tokens and a stupid-backoff n-gram model over training
// summaries.
//
//   p(y_i | x, y_<i) = lambda * copy(x) + (1 - lambda) * backoff(y_<i)
//
// copy(x) spreads (1 - eos_share) uniformly over the multiset of content
// tokens of x and puts eos_share on EOS (all mass on EOS when x has no
// content tokens). backoff scores use weight 0.4 per backed-off order
// down to an add-alpha unigram floor, then are normalized over the
// vocabulary so every context yields a proper distribution.
class CopyMixModel final : public SequenceModel {
 public:
  CopyMixModel(Vocab vocab, CopyMixConfig config, double lambda,
               std::vector<ContextTable> tables, std::uint64_t shard_seed = 0);

  const Vocab& vocab() const override { return vocab_; }
  Distribution next_distribution(std::span<const TokenId> input,
                                 std::span<const TokenId> prefix) const override;

  // The backoff component alone (lambda = 0 endpoint).
  Distribution backoff_distribution(std::span<const TokenId> prefix) const;
  // The copy component alone (lambda = 1 endpoint).
  Distribution copy_distribution(std::span<const TokenId> input) const;

  const CopyMixConfig& config() const { return config_; }
  double lambda() const { return lambda_; }
  std::uint64_t shard_seed() const { return shard_seed_; }
  const std::vector<ContextTable>& tables() const { return tables_; }

  CopyMixModel with_lambda(double lambda) const;

  nlohmann::json to_json() const;
  static CopyMixModel from_json(const nlohmann::json& j);

 private:
  Vocab vocab_;
  CopyMixConfig config_;
  double lambda_;
  std::uint64_t shard_seed_;
  std::vector<ContextTable> tables_;  // tables_[k-1] holds order-k counts

  // Precomputed at construction: 0.4^(order-1) * smoothed unigram vector.
  std::vector<double> backoff_base_;
  std::vector<double> backoff_pow_;  // 0.4^j

  void finalize();
  void check_ids(std::span<const TokenId> ids) const;
};

using TrainPair = std::pair<std::string, std::string>;  // (input text, summary text)

// Accumulates n-gram counts from the summaries of a seeded 80% shard of
// the corpus (shuffle split, so the remaining 20% is well defined), then
// picks lambda from the grid by held-out log-likelihood on that 20%
// (ties and an empty held-out set fall back to the earliest grid entry).
// Deterministic given (corpus order, options, vocab, shard_seed).
CopyMixModel train_copymix(std::span<const TrainPair> corpus, const TrainOptions& options,
                           const Vocab& vocab, std::uint64_t shard_seed);

// Convenience overload building the vocabulary from the corpus itself.
CopyMixModel train_copymix(std::span<const TrainPair> corpus, const TrainOptions& options,
                           std::uint64_t shard_seed);

}  // namespace summens
