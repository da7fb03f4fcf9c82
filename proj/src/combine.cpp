#include "summens/combine.hpp"

#include <stdexcept>

namespace summens {

namespace {

// Pairwise (tree) summation over members[lo, hi) in index order. Using a
// balanced tree instead of a running sum makes the mean of equal-sized
// nested groups bit-identical to the flat mean: halving is exact in
// binary floating point, so ((a+b)/2 + (c+d)/2) / 2 == (a+b+c+d) / 4.
std::vector<double> pairwise_sum(const std::vector<Distribution>& dists, std::size_t lo,
                                 std::size_t hi) {
  if (hi - lo == 1) return dists[lo].probs;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::vector<double> left = pairwise_sum(dists, lo, mid);
  const std::vector<double> right = pairwise_sum(dists, mid, hi);
  for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
  return left;
}

}  // namespace

TokenEnsembleModel::TokenEnsembleModel(std::vector<std::shared_ptr<const SequenceModel>> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("TokenEnsembleModel: no members");
  for (const auto& m : members_) {
    if (!m) throw std::invalid_argument("TokenEnsembleModel: null member");
    if (!(m->vocab() == members_.front()->vocab())) {
      throw std::invalid_argument("TokenEnsembleModel: members must share one vocabulary");
    }
  }
}

const Vocab& TokenEnsembleModel::vocab() const { return members_.front()->vocab(); }

Distribution TokenEnsembleModel::next_distribution(std::span<const TokenId> input,
                                                   std::span<const TokenId> prefix) const {
  std::vector<Distribution> dists;
  dists.reserve(members_.size());
  for (const auto& m : members_) dists.push_back(m->next_distribution(input, prefix));
  Distribution out;
  out.probs = pairwise_sum(dists, 0, dists.size());
  const auto count = static_cast<double>(members_.size());
  for (double& p : out.probs) p /= count;
  return out;
}

namespace {

CopyMixModel average_impl(std::span<const CopyMixModel* const> models) {
  if (models.empty()) throw std::invalid_argument("weight_average: no models");
  const CopyMixModel& first = *models.front();
  for (const CopyMixModel* m : models) {
    if (m->config().order != first.config().order || m->config().alpha != first.config().alpha) {
      throw std::invalid_argument("weight_average: structural hyperparameter mismatch");
    }
    if (!(m->vocab() == first.vocab())) {
      throw std::invalid_argument("weight_average: vocabulary mismatch");
    }
  }

  const double count = static_cast<double>(models.size());
  std::vector<ContextTable> tables(static_cast<std::size_t>(first.config().order));
  for (std::size_t k = 0; k < tables.size(); ++k) {
    // Union of contexts; missing entries count as zero.
    for (const CopyMixModel* m : models) {
      for (const auto& [ctx, counts] : m->tables()[k]) {
        auto& acc = tables[k][ctx];
        for (const auto& [tok, c] : counts.next) acc.next[tok] += c;
      }
    }
    for (auto& [ctx, acc] : tables[k]) {
      double total = 0.0;
      for (auto& [tok, c] : acc.next) {
        c /= count;
        total += c;
      }
      acc.total = total;
    }
  }

  double lambda = 0.0;
  double eos_share = 0.0;
  for (const CopyMixModel* m : models) {
    lambda += m->lambda();
    eos_share += m->config().eos_share;
  }
  CopyMixConfig config = first.config();
  config.eos_share = eos_share / count;
  return CopyMixModel(first.vocab(), config, lambda / count, std::move(tables), 0);
}

}  // namespace

CopyMixModel weight_average(std::span<const CopyMixModel* const> models) {
  return average_impl(models);
}

CopyMixModel weight_average(std::span<const CopyMixModel> models) {
  std::vector<const CopyMixModel*> ptrs;
  ptrs.reserve(models.size());
  for (const auto& m : models) ptrs.push_back(&m);
  return average_impl(ptrs);
}

}  // namespace summens
