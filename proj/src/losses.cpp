#include "summens/losses.hpp"

#include <stdexcept>

namespace summens {

double reward(std::string_view hyp, std::string_view ref, const RewardSpec& spec) {
  return reward_value(rouge_score(hyp, ref, spec.variant), spec.field);
}

double rl_loss(std::string_view greedy_text, std::string_view sampled_text,
               std::string_view reference_text, double sampled_logprob,
               const RewardSpec& reward_spec) {
  if (sampled_logprob > 0.0) {
    throw std::invalid_argument("rl_loss: log-probability must be non-positive");
  }
  const double greedy_reward = reward(greedy_text, reference_text, reward_spec);
  const double sampled_reward = reward(sampled_text, reference_text, reward_spec);
  return (greedy_reward - sampled_reward) * sampled_logprob;
}

double rl_loss(const RlLossInputs& inputs, const Vocab& vocab) {
  if (inputs.gamma < 0.0 || inputs.gamma > 1.0) {
    throw std::invalid_argument("rl_loss: gamma must be in [0, 1]");
  }
  return rl_loss(vocab.decode(inputs.greedy_seq), vocab.decode(inputs.sampled_seq),
                 vocab.decode(inputs.reference), inputs.sampled_logprob, inputs.reward);
}

double combined_loss(double l_rl, double l_ml, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("combined_loss: gamma must be in [0, 1]");
  }
  return gamma * l_rl + (1.0 - gamma) * l_ml;
}

}  // namespace summens
