#pragma once

#include <span>
#include <string_view>

#include "summens/rouge.hpp"
#include "summens/vocab.hpp"

namespace summens {

struct RewardSpec {
  RougeVariant variant = RougeVariant::l();
  RougeField field = RougeField::kF1;
};

double reward(std::string_view hyp, std::string_view ref, const RewardSpec& spec);

// Inputs of the self-critical sequence loss. greedy_seq is the greedy
// decode, sampled_seq an ancestral sample, reference the ground truth;
// sampled_logprob is ln P(sampled | input) and must be <= 0.
struct RlLossInputs {
  TokenIds greedy_seq;
  TokenIds sampled_seq;
  TokenIds reference;
  double sampled_logprob = 0.0;
  RewardSpec reward;
  double gamma = 0.9;
  double ml_loss = 0.0;
};

// (R(greedy, ref) - R(sampled, ref)) * log P(sampled | input), with the
// reward computed on detokenized surface text.
double rl_loss(const RlLossInputs& inputs, const Vocab& vocab);

// Text-level form, useful when sequences are already surface text.
double rl_loss(std::string_view greedy_text, std::string_view sampled_text,
               std::string_view reference_text, double sampled_logprob,
               const RewardSpec& reward_spec);

// gamma * rl + (1 - gamma) * ml, gamma in [0, 1].
double combined_loss(double l_rl, double l_ml, double gamma);

}  // namespace summens
