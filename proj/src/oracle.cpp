#include "summens/oracle.hpp"

#include "summens/rouge.hpp"
#include "summens/text.hpp"

namespace summens {

SentencePool sentence_pool(const NoteRecord& record) {
  SentencePool pool;
  for (const std::string* field : {&record.assessment, &record.subjective, &record.objective}) {
    for (auto& sentence : split_sentences(*field)) {
      pool.sentences.push_back(std::move(sentence));
    }
  }
  return pool;
}

std::string all_overlap(const SentencePool& pool, std::string_view reference) {
  const TokenSeq ref_tokens = tokenize(reference);
  std::string out;
  for (const auto& sentence : pool.sentences) {
    if (rouge_n(tokenize(sentence), ref_tokens, 1).recall > 0.0) {
      if (!out.empty()) out.push_back(' ');
      out += sentence;
    }
  }
  return out;
}

GreedyTrace greedy_best_trace(const SentencePool& pool, std::string_view reference) {
  const TokenSeq ref_tokens = tokenize(reference);
  GreedyTrace trace;
  std::vector<char> used(pool.sentences.size(), 0);
  TokenSeq summary_tokens;
  double best_f1 = 0.0;

  while (true) {
    double round_best = best_f1;
    std::size_t round_pick = pool.sentences.size();
    for (std::size_t i = 0; i < pool.sentences.size(); ++i) {
      if (used[i]) continue;
      TokenSeq candidate = summary_tokens;
      for (auto& tok : tokenize(pool.sentences[i])) candidate.push_back(std::move(tok));
      const double f1 = rouge_n(candidate, ref_tokens, 1).f1;
      // Strict improvement required; ties keep the lowest index.
      if (f1 > round_best) {
        round_best = f1;
        round_pick = i;
      }
    }
    if (round_pick == pool.sentences.size()) break;
    used[round_pick] = 1;
    for (auto& tok : tokenize(pool.sentences[round_pick])) summary_tokens.push_back(std::move(tok));
    best_f1 = round_best;
    if (!trace.summary.empty()) trace.summary.push_back(' ');
    trace.summary += pool.sentences[round_pick];
    trace.steps.push_back({round_pick, best_f1});
  }
  return trace;
}

std::string greedy_best(const SentencePool& pool, std::string_view reference) {
  return greedy_best_trace(pool, reference).summary;
}

}  // namespace summens
