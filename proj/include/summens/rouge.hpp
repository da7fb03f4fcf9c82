#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "summens/text.hpp"

namespace summens {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Which score field a reward reads.
enum class RougeField { kF1, kPrecision, kRecall };

// ROUGE-N for order >= 1, or ROUGE-L (LCS based).
struct RougeVariant {
  enum class Kind { kNgram, kLcs };
  Kind kind = Kind::kLcs;
  int order = 0;  // meaningful for kNgram only

  static RougeVariant n(int order);
  static RougeVariant l() { return RougeVariant{Kind::kLcs, 0}; }

  // Accepts "L", "l", or a positive integer string ("1", "2", ...).
  static RougeVariant parse(std::string_view s);
  std::string to_string() const;

  bool operator==(const RougeVariant&) const = default;
};

// N-gram overlap variant. overlap = sum over grams of
// min(count_hyp, count_ref); precision = overlap / #hyp grams,
// recall = overlap / #ref grams, a side with no n-grams scores 0.
RougeScore rouge_n(const TokenSeq& hyp, const TokenSeq& ref, int n);

// Longest common subsequence length, O(|a|*|b|) dynamic program.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// Whole-sequence LCS variant: precision = lcs/|hyp|, recall = lcs/|ref|.
RougeScore rouge_l(const TokenSeq& hyp, const TokenSeq& ref);

// Tokenize both texts with the shared rule, then score.
RougeScore rouge_score(std::string_view hyp, std::string_view ref, const RougeVariant& variant);

double reward_value(const RougeScore& score, RougeField field);

RougeField parse_rouge_field(std::string_view s);
std::string to_string(RougeField f);

}  // namespace summens
