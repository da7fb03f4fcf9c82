#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "summens/vocab.hpp"

namespace summens {

// Probability vector over the vocabulary. Entries are >= 0 and sum to 1
// within 1e-9.
struct Distribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  bool is_valid(double tol = 1e-9) const;
  // Throws std::invalid_argument when the invariant does not hold.
  void validate(double tol = 1e-9) const;
};

// A conditional sequence model p(y_i | x, y_<i). This is the single
// interface every decoder and ensembler consumes. Implementations are
// immutable after construction and safe for concurrent callers.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;

  virtual const Vocab& vocab() const = 0;

  // Distribution over the next token given the input and the generated
  // prefix (BOS is implicit and never part of the prefix). Throws
  // std::invalid_argument on out-of-vocabulary ids. Deterministic for
  // fixed arguments.
  virtual Distribution next_distribution(std::span<const TokenId> input,
                                         std::span<const TokenId> prefix) const = 0;
};

// Sum of step log-probabilities ln p(y_i | x, y_<i), natural log.
// y must be non-empty and end with EOS. Returns -infinity when any step
// has probability zero.
double sequence_logprob(const SequenceModel& model, std::span<const TokenId> input,
                        std::span<const TokenId> y);

// Deterministic lookup model: maps (input, prefix) contexts to stored
// distributions, with a default for unmapped contexts. Exists to make
// exhaustive decoding oracles possible.
class TableModel final : public SequenceModel {
 public:
  TableModel(Vocab vocab, Distribution default_dist);

  // Build-time only; the registry freezes models behind const pointers.
  void set_entry(TokenIds input, TokenIds prefix, Distribution dist);

  const Vocab& vocab() const override { return vocab_; }
  Distribution next_distribution(std::span<const TokenId> input,
                                 std::span<const TokenId> prefix) const override;

  // Human-writable fixture format: probabilities as token -> value maps,
  // missing tokens meaning zero.
  static TableModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  Vocab vocab_;
  Distribution default_;
  // Key = input ++ {-1} ++ prefix; ids are non-negative so the sentinel
  // cannot collide.
  std::map<TokenIds, Distribution> entries_;

  void check_ids(std::span<const TokenId> ids) const;
};

}  // namespace summens
