#include "summens/zoo.hpp"

#include <map>
#include <optional>
#include <stdexcept>

#include "summens/combine.hpp"
#include "summens/decode.hpp"
#include "summens/rng.hpp"
#include "summens/rouge.hpp"

namespace summens {

namespace {

// Shard-seed salts per member family. Seeds must stay disjoint across
// families so "theta_A-1" and "theta_AS-1" train on different shards.
constexpr std::uint64_t kSaltA = 0;
constexpr std::uint64_t kSaltAS = 100;
constexpr std::uint64_t kSaltAV2 = 200;
constexpr std::uint64_t kSaltASV2 = 300;

constexpr int kFullRosterA = 15;  // theta_A-10..15 feed the second nine-model ensemble
constexpr int kRosterAS = 9;

Vocab corpus_vocab(std::span<const NoteRecord> corpus) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size() * 4);
  for (const auto& r : corpus) {
    texts.push_back(r.assessment);
    texts.push_back(r.subjective);
    texts.push_back(r.objective);
    if (r.summary) texts.push_back(*r.summary);
  }
  return Vocab::from_corpus(texts);
}

std::vector<TrainPair> training_pairs(std::span<const NoteRecord> corpus, const FieldSpec& fields) {
  std::vector<TrainPair> pairs;
  pairs.reserve(corpus.size());
  for (const auto& r : corpus) {
    if (!r.summary) {
      throw std::invalid_argument("training corpus record '" + r.id + "' has no summary");
    }
    pairs.emplace_back(assemble_input(r, fields), *r.summary);
  }
  return pairs;
}

TrainOptions variant_options(const TrainOptions& base) {
  // Deliberately different hyperparameters to diversify the second
  // (3, 3) ensemble's members.
  TrainOptions v = base;
  v.config.order = std::max(1, base.config.order - 1);
  v.config.alpha = base.config.alpha * 3.0;
  v.config.eos_share = std::min(1.0, base.config.eos_share * 1.5);
  return v;
}

// Re-selects lambda to maximize mean greedy-decode ROUGE-L F1 on a fixed
// corpus slice; the reward-tuned counterpart of held-out likelihood
// selection.
CopyMixModel reselect_lambda_by_reward(const CopyMixModel& model,
                                       std::span<const NoteRecord> corpus,
                                       const FieldSpec& fields,
                                       std::span<const double> lambda_grid) {
  const std::size_t sample = std::min<std::size_t>(corpus.size(), 40);
  DecodeParams params;
  params.max_length = 64;

  double best_reward = -1.0;
  double best_lambda = model.lambda();
  for (const double lambda : lambda_grid) {
    const CopyMixModel candidate = model.with_lambda(lambda);
    double total = 0.0;
    for (std::size_t i = 0; i < sample; ++i) {
      if (!corpus[i].summary) {
        throw std::invalid_argument("reward tuning record '" + corpus[i].id + "' has no summary");
      }
      const TokenIds input = candidate.vocab().encode(assemble_input(corpus[i], fields));
      const Hypothesis hyp = greedy_search(candidate, input, params);
      const std::string output = candidate.vocab().decode(hyp.ids);
      total += rouge_score(output, *corpus[i].summary, RougeVariant::l()).f1;
    }
    const double mean = sample ? total / static_cast<double>(sample) : 0.0;
    if (mean > best_reward) {
      best_reward = mean;
      best_lambda = lambda;
    }
  }
  return model.with_lambda(best_lambda);
}

struct MemberPlan {
  FieldSpec fields;
  TrainOptions options;
  std::uint64_t shard_seed = 0;
};

// Decodes a trainable member id into its field view, options, and shard
// seed. Derived ids (rl, wavg) are handled separately.
std::optional<MemberPlan> member_plan(const std::string& id, std::uint64_t base_seed,
                                      const TrainOptions& options) {
  const auto tail_index = [](const std::string& s, const std::string& prefix) -> int {
    if (s.rfind(prefix, 0) != 0) return -1;
    const std::string tail = s.substr(prefix.size());
    if (tail.empty()) return -1;
    for (const char c : tail) {
      if (c < '0' || c > '9') return -1;
    }
    return std::stoi(tail);
  };

  int idx;
  if ((idx = tail_index(id, "theta_A-v2-")) > 0) {
    return MemberPlan{{Field::kAssessment}, variant_options(options),
                      mix_seed(base_seed, kSaltAV2 + static_cast<std::uint64_t>(idx))};
  }
  if ((idx = tail_index(id, "theta_AS-v2-")) > 0) {
    return MemberPlan{{Field::kAssessment, Field::kSubjective}, variant_options(options),
                      mix_seed(base_seed, kSaltASV2 + static_cast<std::uint64_t>(idx))};
  }
  if ((idx = tail_index(id, "theta_A-")) > 0) {
    return MemberPlan{{Field::kAssessment}, options,
                      mix_seed(base_seed, kSaltA + static_cast<std::uint64_t>(idx))};
  }
  if ((idx = tail_index(id, "theta_AS-")) > 0) {
    return MemberPlan{{Field::kAssessment, Field::kSubjective}, options,
                      mix_seed(base_seed, kSaltAS + static_cast<std::uint64_t>(idx))};
  }
  return std::nullopt;
}

}  // namespace

ModelRegistry build_roster(std::span<const NoteRecord> corpus,
                           std::span<const std::uint64_t> seeds_a,
                           std::span<const std::uint64_t> seeds_as, const TrainOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("build_roster: empty corpus");
  const Vocab vocab = corpus_vocab(corpus);
  const auto pairs_a = training_pairs(corpus, {Field::kAssessment});
  const auto pairs_as = training_pairs(corpus, {Field::kAssessment, Field::kSubjective});

  ModelRegistry registry;
  for (std::size_t i = 0; i < seeds_a.size(); ++i) {
    registry.add("theta_A-" + std::to_string(i + 1),
                 std::make_shared<const CopyMixModel>(
                     train_copymix(pairs_a, options, vocab, seeds_a[i])));
  }
  for (std::size_t i = 0; i < seeds_as.size(); ++i) {
    registry.add("theta_AS-" + std::to_string(i + 1),
                 std::make_shared<const CopyMixModel>(
                     train_copymix(pairs_as, options, vocab, seeds_as[i])));
  }
  return registry;
}

ModelRegistry build_full_roster(std::span<const NoteRecord> corpus, std::uint64_t base_seed,
                                const TrainOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("build_full_roster: empty corpus");
  const Vocab vocab = corpus_vocab(corpus);
  const auto pairs_a = training_pairs(corpus, {Field::kAssessment});
  const auto pairs_as = training_pairs(corpus, {Field::kAssessment, Field::kSubjective});

  std::vector<CopyMixModel> members_a;
  members_a.reserve(kFullRosterA);
  for (int i = 1; i <= kFullRosterA; ++i) {
    members_a.push_back(train_copymix(pairs_a, options, vocab,
                                      mix_seed(base_seed, kSaltA + static_cast<std::uint64_t>(i))));
  }
  std::vector<CopyMixModel> members_as;
  members_as.reserve(kRosterAS);
  for (int i = 1; i <= kRosterAS; ++i) {
    members_as.push_back(train_copymix(
        pairs_as, options, vocab, mix_seed(base_seed, kSaltAS + static_cast<std::uint64_t>(i))));
  }

  ModelRegistry registry;
  for (int i = 0; i < kFullRosterA; ++i) {
    registry.add("theta_A-" + std::to_string(i + 1),
                 std::make_shared<const CopyMixModel>(members_a[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < kRosterAS; ++i) {
    registry.add("theta_AS-" + std::to_string(i + 1),
                 std::make_shared<const CopyMixModel>(members_as[static_cast<std::size_t>(i)]));
  }

  const TrainOptions v2 = variant_options(options);
  for (int i = 1; i <= 3; ++i) {
    registry.add("theta_A-v2-" + std::to_string(i),
                 std::make_shared<const CopyMixModel>(train_copymix(
                     pairs_a, v2, vocab, mix_seed(base_seed, kSaltAV2 + static_cast<std::uint64_t>(i)))));
    registry.add("theta_AS-v2-" + std::to_string(i),
                 std::make_shared<const CopyMixModel>(train_copymix(
                     pairs_as, v2, vocab,
                     mix_seed(base_seed, kSaltASV2 + static_cast<std::uint64_t>(i)))));
  }

  for (int i = 1; i <= 3; ++i) {
    registry.add("theta_A-rl-" + std::to_string(i),
                 std::make_shared<const CopyMixModel>(reselect_lambda_by_reward(
                     members_a[static_cast<std::size_t>(i - 1)], corpus, {Field::kAssessment},
                     options.lambda_grid)));
  }

  const auto span_of = [](const std::vector<CopyMixModel>& v, std::size_t count) {
    return std::span<const CopyMixModel>(v.data(), count);
  };
  registry.add("theta_A-wavg3",
               std::make_shared<const CopyMixModel>(weight_average(span_of(members_a, 3))));
  registry.add("theta_A-wavg9",
               std::make_shared<const CopyMixModel>(weight_average(span_of(members_a, 9))));
  registry.add("theta_AS-wavg9",
               std::make_shared<const CopyMixModel>(weight_average(span_of(members_as, 9))));
  return registry;
}

ModelRegistry build_models_for(std::span<const std::string> ids,
                               std::span<const NoteRecord> corpus, std::uint64_t base_seed,
                               const TrainOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("build_models_for: empty corpus");
  const Vocab vocab = corpus_vocab(corpus);

  // Cache of trained base members, keyed by id, so derived models can
  // reuse them without registering extras.
  std::map<std::string, CopyMixModel> trained;
  const auto train_member = [&](const std::string& id) -> const CopyMixModel& {
    const auto it = trained.find(id);
    if (it != trained.end()) return it->second;
    const auto plan = member_plan(id, base_seed, options);
    if (!plan) throw std::invalid_argument("unknown trainable model id '" + id + "'");
    const auto pairs = training_pairs(corpus, plan->fields);
    return trained.emplace(id, train_copymix(pairs, plan->options, vocab, plan->shard_seed))
        .first->second;
  };

  const auto average_of = [&](const std::string& family, int count) {
    std::vector<CopyMixModel> members;
    members.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) members.push_back(train_member(family + std::to_string(i)));
    return weight_average(std::span<const CopyMixModel>(members));
  };

  ModelRegistry registry;
  for (const auto& id : ids) {
    if (registry.contains(id)) continue;
    if (id == "theta_A-wavg3") {
      registry.add(id, std::make_shared<const CopyMixModel>(average_of("theta_A-", 3)));
    } else if (id == "theta_A-wavg9") {
      registry.add(id, std::make_shared<const CopyMixModel>(average_of("theta_A-", 9)));
    } else if (id == "theta_AS-wavg9") {
      registry.add(id, std::make_shared<const CopyMixModel>(average_of("theta_AS-", 9)));
    } else if (id.rfind("theta_A-rl-", 0) == 0) {
      const std::string base_id = "theta_A-" + id.substr(std::string("theta_A-rl-").size());
      registry.add(id, std::make_shared<const CopyMixModel>(reselect_lambda_by_reward(
                           train_member(base_id), corpus, {Field::kAssessment},
                           options.lambda_grid)));
    } else {
      registry.add(id, std::make_shared<const CopyMixModel>(train_member(id)));
    }
  }
  return registry;
}

std::vector<Fixture> list_fixtures(const std::filesystem::path& fixtures_dir) {
  const FieldSpec a{Field::kAssessment};
  const FieldSpec as{Field::kAssessment, Field::kSubjective};
  const std::vector<std::pair<std::string, FieldSpec>> entries = {
      {"individual-theta-a", a},
      {"individual-theta-as", as},
      {"weight-avg-theta-a", a},
      {"weight-avg-theta-as", as},
      {"tok-ens-theta-a", a},
      {"tok-ens-theta-as", as},
      {"mbr-theta-a", a},
      {"mbr-theta-as", as},
      {"hesm-1-1-mbr9", as},
      {"tok-ens-3-3", as},
      {"hesm-3-3-mbr3", as},
      {"hesm-3-3-mbr9", as},
      {"final-hesm", as},
      {"hesm-unpack-1", as},
      {"hesm-unpack-2", as},
  };
  std::vector<Fixture> fixtures;
  fixtures.reserve(entries.size());
  for (const auto& [name, fields] : entries) {
    Fixture f;
    f.name = name;
    f.file = fixtures_dir / (name + ".json");
    f.required_models = EnsembleSpec::load(f.file).referenced_models();
    f.eval_fields = fields;
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

}  // namespace summens
