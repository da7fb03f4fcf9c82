#pragma once

#include <memory>
#include <span>
#include <vector>

#include "summens/copymix.hpp"
#include "summens/model.hpp"

namespace summens {

// Token-level ensemble: the step distribution is the arithmetic mean of
// the members' distributions, computed in probability space. Member
// vectors are combined by pairwise summation in index order, which keeps
// results bit-stable and makes nested means of equal-sized groups agree
// exactly with the flat mean. The ensemble is itself a SequenceModel, so
// decoders and higher ensembles consume it transparently.
class TokenEnsembleModel final : public SequenceModel {
 public:
  // Throws std::invalid_argument when members is empty or the members do
  // not share an identical vocabulary.
  explicit TokenEnsembleModel(std::vector<std::shared_ptr<const SequenceModel>> members);

  const Vocab& vocab() const override;
  Distribution next_distribution(std::span<const TokenId> input,
                                 std::span<const TokenId> prefix) const override;

  std::size_t member_count() const { return members_.size(); }
  const std::vector<std::shared_ptr<const SequenceModel>>& members() const { return members_; }

 private:
  std::vector<std::shared_ptr<const SequenceModel>> members_;
};

// Element-wise arithmetic mean of the n-gram count tables and of the
// mixture parameters (lambda, eos_share). Requires at least one model
// and identical structural hyperparameters; throws std::invalid_argument
// on a mismatch of order, alpha, or vocabulary. The averaged model's
// shard seed is 0 (it is not the product of a single training shard).
CopyMixModel weight_average(std::span<const CopyMixModel* const> models);
CopyMixModel weight_average(std::span<const CopyMixModel> models);

}  // namespace summens
