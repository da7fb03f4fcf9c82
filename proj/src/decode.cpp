#include "summens/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "summens/rng.hpp"

namespace summens {

void DecodeParams::validate() const {
  if (num_beams < 1) throw std::invalid_argument("DecodeParams: num_beams must be >= 1");
  if (max_length < 1) throw std::invalid_argument("DecodeParams: max_length must be >= 1");
  if (min_length < 0 || min_length > max_length) {
    throw std::invalid_argument("DecodeParams: need 0 <= min_length <= max_length");
  }
  if (length_penalty < 0.0) {
    throw std::invalid_argument("DecodeParams: length_penalty must be >= 0");
  }
  if (no_repeat_ngram_size < 0) {
    throw std::invalid_argument("DecodeParams: no_repeat_ngram_size must be >= 0");
  }
}

nlohmann::json DecodeParams::to_json() const {
  return {{"num_beams", num_beams},
          {"length_penalty", length_penalty},
          {"min_length", min_length},
          {"max_length", max_length},
          {"no_repeat_ngram_size", no_repeat_ngram_size}};
}

DecodeParams DecodeParams::from_json(const nlohmann::json& j) {
  DecodeParams p;
  p.num_beams = j.value("num_beams", p.num_beams);
  p.length_penalty = j.value("length_penalty", p.length_penalty);
  p.min_length = j.value("min_length", p.min_length);
  p.max_length = j.value("max_length", p.max_length);
  p.no_repeat_ngram_size = j.value("no_repeat_ngram_size", p.no_repeat_ngram_size);
  p.validate();
  return p;
}

double length_penalized_score(double logprob, std::size_t length, double alpha) {
  if (length == 0) throw std::invalid_argument("length_penalized_score: length must be >= 1");
  return logprob / std::pow(static_cast<double>(length), alpha);
}

Distribution apply_constraints(std::span<const TokenId> prefix, Distribution dist,
                               const DecodeParams& params) {
  params.validate();
  dist.validate();
  const std::size_t vocab_size = dist.size();
  std::vector<char> banned(vocab_size, 0);

  // A token is banned when choosing it would complete an n-gram that
  // already occurs in the prefix.
  const int n = params.no_repeat_ngram_size;
  if (n > 0 && prefix.size() + 1 >= static_cast<std::size_t>(n)) {
    const std::size_t ctx = static_cast<std::size_t>(n) - 1;
    const auto suffix = prefix.subspan(prefix.size() - ctx, ctx);
    for (std::size_t i = 0; i + n <= prefix.size(); ++i) {
      if (std::equal(suffix.begin(), suffix.end(), prefix.begin() + i)) {
        const TokenId completion = prefix[i + ctx];
        if (completion >= 0 && static_cast<std::size_t>(completion) < vocab_size) {
          banned[static_cast<std::size_t>(completion)] = 1;
        }
      }
    }
  }

  const bool eos_too_early = prefix.size() < static_cast<std::size_t>(params.min_length);
  if (eos_too_early && Vocab::kEos < static_cast<TokenId>(vocab_size)) {
    banned[Vocab::kEos] = 1;
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    if (banned[i]) dist.probs[i] = 0.0;
    sum += dist.probs[i];
  }
  if (sum > 0.0) {
    for (double& p : dist.probs) p /= sum;
    return dist;
  }

  // Everything with mass was banned; force a single token so decoding
  // stays total. EOS when it is allowed, otherwise the lowest-id token
  // that is not banned (EOS again if even that fails).
  std::fill(dist.probs.begin(), dist.probs.end(), 0.0);
  std::size_t forced = Vocab::kEos;
  if (banned[Vocab::kEos]) {
    forced = vocab_size;  // sentinel: not found
    for (std::size_t i = 0; i < vocab_size; ++i) {
      if (!banned[i] && i != Vocab::kEos) {
        forced = i;
        break;
      }
    }
    if (forced == vocab_size) forced = Vocab::kEos;
  }
  dist.probs[forced] = 1.0;
  return dist;
}

namespace {

bool lex_less(const TokenIds& a, const TokenIds& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
  TokenIds ids;
  double logprob;
};

// Higher log-probability first; ties prefer the lexicographically
// smaller sequence.
bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.logprob != b.logprob) return a.logprob > b.logprob;
  return lex_less(a.ids, b.ids);
}

TokenIds extended(const TokenIds& ids, TokenId t) {
  TokenIds out;
  out.reserve(ids.size() + 1);
  out = ids;
  out.push_back(t);
  return out;
}

void rank_finished(std::vector<Hypothesis>& finished, double alpha) {
  std::stable_sort(finished.begin(), finished.end(), [alpha](const Hypothesis& a, const Hypothesis& b) {
    const double sa = length_penalized_score(a.logprob, a.ids.size(), alpha);
    const double sb = length_penalized_score(b.logprob, b.ids.size(), alpha);
    if (sa != sb) return sa > sb;
    return lex_less(a.ids, b.ids);
  });
}

}  // namespace

std::vector<Hypothesis> beam_search(const SequenceModel& model, std::span<const TokenId> input,
                                    const DecodeParams& params) {
  params.validate();
  const std::size_t vocab_size = static_cast<std::size_t>(model.vocab().size());
  const auto width = static_cast<std::size_t>(params.num_beams);

  std::vector<Candidate> live{{TokenIds{}, 0.0}};
  std::vector<Hypothesis> finished;

  while (!live.empty()) {
    const std::size_t cur_len = live.front().ids.size();

    if (cur_len + 1 >= static_cast<std::size_t>(params.max_length)) {
      // Final slot: terminate every live beam with a forced EOS. The
      // forced token carries no probability cost (truncation, not a
      // model choice).
      for (auto& beam : live) {
        finished.push_back({extended(beam.ids, Vocab::kEos), beam.logprob, true});
      }
      live.clear();
      break;
    }

    std::vector<Candidate> candidates;
    candidates.reserve(live.size() * vocab_size);
    for (const auto& beam : live) {
      const Distribution step =
          apply_constraints(beam.ids, model.next_distribution(input, beam.ids), params);
      for (std::size_t t = 0; t < vocab_size; ++t) {
        if (step.probs[t] <= 0.0) continue;
        candidates.push_back(
            {extended(beam.ids, static_cast<TokenId>(t)), beam.logprob + std::log(step.probs[t])});
      }
    }
    std::sort(candidates.begin(), candidates.end(), candidate_before);
    if (candidates.size() > width) candidates.resize(width);

    live.clear();
    for (auto& c : candidates) {
      if (c.ids.back() == Vocab::kEos) {
        finished.push_back({std::move(c.ids), c.logprob, true});
      } else {
        live.push_back(std::move(c));
      }
    }

    // Early exit only when the top num_beams finished scores provably
    // beat the best any live beam could still reach. A live beam's
    // log-probability never increases, and the penalized score of a
    // non-positive log-probability is maximized at max_length.
    if (!live.empty() && finished.size() >= width) {
      rank_finished(finished, params.length_penalty);
      const Hypothesis& kth = finished[width - 1];
      const double kth_score =
          length_penalized_score(kth.logprob, kth.ids.size(), params.length_penalty);
      double best_bound = -std::numeric_limits<double>::infinity();
      for (const auto& beam : live) {
        best_bound = std::max(best_bound,
                              length_penalized_score(beam.logprob,
                                                     static_cast<std::size_t>(params.max_length),
                                                     params.length_penalty));
      }
      if (kth_score > best_bound) break;
    }
  }

  rank_finished(finished, params.length_penalty);
  if (finished.size() > width) finished.resize(width);
  return finished;
}

namespace {

// Shared stepping loop for the single-path decoders. pick returns the
// chosen token given the constrained distribution.
template <class PickFn>
Hypothesis decode_single_path(const SequenceModel& model, std::span<const TokenId> input,
                              const DecodeParams& params, PickFn&& pick) {
  params.validate();
  Hypothesis hyp;
  while (true) {
    if (hyp.ids.size() + 1 >= static_cast<std::size_t>(params.max_length)) {
      hyp.ids.push_back(Vocab::kEos);  // forced, no probability cost
      hyp.finished = true;
      return hyp;
    }
    const Distribution step =
        apply_constraints(hyp.ids, model.next_distribution(input, hyp.ids), params);
    const TokenId t = pick(step);
    hyp.logprob += std::log(step.probs[static_cast<std::size_t>(t)]);
    hyp.ids.push_back(t);
    if (t == Vocab::kEos) {
      hyp.finished = true;
      return hyp;
    }
  }
}

}  // namespace

Hypothesis greedy_search(const SequenceModel& model, std::span<const TokenId> input,
                         const DecodeParams& params) {
  return decode_single_path(model, input, params, [](const Distribution& d) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < d.size(); ++t) {
      if (d.probs[t] > d.probs[best]) best = t;  // ties keep the lowest id
    }
    return static_cast<TokenId>(best);
  });
}

Hypothesis sample_sequence(const SequenceModel& model, std::span<const TokenId> input,
                           const DecodeParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return decode_single_path(model, input, params, [&rng](const Distribution& d) {
    const double u = rng.next_unit();
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (d.probs[t] <= 0.0) continue;
      last_positive = t;
      cum += d.probs[t];
      if (u < cum) return static_cast<TokenId>(t);
    }
    return static_cast<TokenId>(last_positive);  // guards rounding at cum ~ 1
  });
}

}  // namespace summens
