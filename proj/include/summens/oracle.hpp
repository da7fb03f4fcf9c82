#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "summens/data.hpp"

namespace summens {

// Input sentences ordered by the sections A, S, O; no empty sentences.
struct SentencePool {
  std::vector<std::string> sentences;
};

SentencePool sentence_pool(const NoteRecord& record);

// Concatenation (pool order, space-joined) of every sentence whose
// ROUGE-1 recall against the reference is positive; empty string when
// none qualify.
std::string all_overlap(const SentencePool& pool, std::string_view reference);

// One accepted round of the greedy oracle.
struct GreedyStep {
  std::size_t sentence_index = 0;
  double f1 = 0.0;  // running ROUGE-1 F1 after accepting the sentence
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
  std::string summary;
};

// Iteratively appends the unused sentence maximizing the running
// summary's ROUGE-1 F1 against the reference (ties pick the lowest pool
// index), stopping as soon as no sentence strictly improves it.
GreedyTrace greedy_best_trace(const SentencePool& pool, std::string_view reference);
std::string greedy_best(const SentencePool& pool, std::string_view reference);

}  // namespace summens
