#include "summens/rouge.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace summens {

namespace {

double f_measure(double p, double r) {
  return (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

RougeVariant RougeVariant::n(int order) {
  if (order < 1) throw std::invalid_argument("RougeVariant: order must be >= 1");
  return RougeVariant{Kind::kNgram, order};
}

RougeVariant RougeVariant::parse(std::string_view s) {
  if (s == "L" || s == "l") return l();
  int order = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), order);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || order < 1) {
    throw std::invalid_argument("RougeVariant: expected 'L' or a positive order, got '" +
                                std::string(s) + "'");
  }
  return n(order);
}

std::string RougeVariant::to_string() const {
  return kind == Kind::kLcs ? "L" : std::to_string(order);
}

RougeScore rouge_n(const TokenSeq& hyp, const TokenSeq& ref, int n) {
  if (n < 1) throw std::invalid_argument("rouge_n: order must be >= 1");
  const NgramMultiset hyp_grams = ngrams(hyp, n);
  const NgramMultiset ref_grams = ngrams(ref, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : hyp_grams.counts) {
    const auto it = ref_grams.counts.find(gram);
    if (it != ref_grams.counts.end()) overlap += std::min(count, it->second);
  }
  const std::size_t hyp_total = hyp_grams.total();
  const std::size_t ref_total = ref_grams.total();
  RougeScore s;
  s.precision = hyp_total > 0 ? static_cast<double>(overlap) / hyp_total : 0.0;
  s.recall = ref_total > 0 ? static_cast<double>(overlap) / ref_total : 0.0;
  s.f1 = f_measure(s.precision, s.recall);
  return s;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  // Two-row DP over the classic recurrence.
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(const TokenSeq& hyp, const TokenSeq& ref) {
  const auto lcs = static_cast<double>(lcs_length(hyp, ref));
  RougeScore s;
  s.precision = hyp.empty() ? 0.0 : lcs / static_cast<double>(hyp.size());
  s.recall = ref.empty() ? 0.0 : lcs / static_cast<double>(ref.size());
  s.f1 = f_measure(s.precision, s.recall);
  return s;
}

RougeScore rouge_score(std::string_view hyp, std::string_view ref, const RougeVariant& variant) {
  const TokenSeq h = tokenize(hyp);
  const TokenSeq r = tokenize(ref);
  return variant.kind == RougeVariant::Kind::kLcs ? rouge_l(h, r) : rouge_n(h, r, variant.order);
}

double reward_value(const RougeScore& score, RougeField field) {
  switch (field) {
    case RougeField::kF1:
      return score.f1;
    case RougeField::kPrecision:
      return score.precision;
    case RougeField::kRecall:
      return score.recall;
  }
  throw std::logic_error("reward_value: bad field");
}

RougeField parse_rouge_field(std::string_view s) {
  if (s == "f1" || s == "F1") return RougeField::kF1;
  if (s == "precision" || s == "p" || s == "prec") return RougeField::kPrecision;
  if (s == "recall" || s == "r" || s == "rec") return RougeField::kRecall;
  throw std::invalid_argument("unknown rouge field '" + std::string(s) + "'");
}

std::string to_string(RougeField f) {
  switch (f) {
    case RougeField::kF1:
      return "f1";
    case RougeField::kPrecision:
      return "precision";
    case RougeField::kRecall:
      return "recall";
  }
  throw std::logic_error("to_string: bad field");
}

}  // namespace summens
