#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace summens {

// Normalized word tokens, order preserved, never empty strings.
using TokenSeq = std::vector<std::string>;

// Lowercase and split on every maximal run of non-alphanumeric bytes.
// Digits are kept; no stemming or stop-word removal. Total function,
// empty input gives an empty sequence.
TokenSeq tokenize(std::string_view text);

// Contiguous n-grams of a token sequence with multiplicities.
struct NgramMultiset {
  int order = 1;
  std::map<std::vector<std::string>, std::size_t> counts;

  std::size_t total() const;
};

// All len(seq) - n + 1 contiguous n-grams; empty multiset when the
// sequence is shorter than n. Throws std::invalid_argument for n < 1.
NgramMultiset ngrams(const TokenSeq& seq, int n);

// Split on '.', '!', '?' and newline, trim surrounding whitespace, drop
// empty pieces. Order preserved.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace summens
