#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "summens/model.hpp"

namespace summens {

struct DecodeParams {
  int num_beams = 4;
  double length_penalty = 0.6;
  int min_length = 5;
  int max_length = 256;
  int no_repeat_ngram_size = 4;  // 0 disables the constraint

  // Throws std::invalid_argument when invariants are violated
  // (num_beams >= 1, max_length >= 1, min_length <= max_length,
  // length_penalty >= 0, no_repeat_ngram_size >= 0).
  void validate() const;

  nlohmann::json to_json() const;
  static DecodeParams from_json(const nlohmann::json& j);

  bool operator==(const DecodeParams&) const = default;
};

// A partial or finished token sequence. ids never include BOS; when
// finished, the last id is EOS and EOS appears only there.
struct Hypothesis {
  TokenIds ids;
  double logprob = 0.0;
  bool finished = false;
};

// logprob / length^alpha. Throws std::invalid_argument for length == 0.
double length_penalized_score(double logprob, std::size_t length, double alpha);

// Decoding constraints applied to one step distribution:
//  - tokens whose choice would complete an n-gram already present in the
//    prefix (n = no_repeat_ngram_size) are zeroed,
//  - EOS is zeroed while the prefix is shorter than min_length,
//  - the rest is renormalized.
// If every token was banned or had no mass, EOS is forced instead (or
// the lowest-id non-banned token when EOS itself is banned), keeping
// decoding total.
Distribution apply_constraints(std::span<const TokenId> prefix, Distribution dist,
                               const DecodeParams& params);

// Standard beam search over the constrained step distributions. All
// beams grow in lockstep from the empty prefix; at each step the top
// num_beams extensions by cumulative log-probability survive, EOS
// extensions moving to the finished pool. A hypothesis reaching the
// final slot (length max_length - 1 with room for one token) is
// terminated with a forced EOS that carries no probability cost.
// Search stops early only when the num_beams best finished penalized
// scores provably cannot be beaten by any live beam. Result is ranked
// by length_penalized_score, ties broken by lexicographically smaller
// id sequence; at most num_beams hypotheses.
std::vector<Hypothesis> beam_search(const SequenceModel& model, std::span<const TokenId> input,
                                    const DecodeParams& params);

// Argmax of the constrained distribution at every step; ties pick the
// lowest token id. Identical to beam_search with num_beams = 1.
Hypothesis greedy_search(const SequenceModel& model, std::span<const TokenId> input,
                         const DecodeParams& params);

// Ancestral sampling from the constrained distributions, driven by the
// deterministic Rng (std::mt19937_64); same seed, same sequence.
Hypothesis sample_sequence(const SequenceModel& model, std::span<const TokenId> input,
                           const DecodeParams& params, std::uint64_t seed);

}  // namespace summens
