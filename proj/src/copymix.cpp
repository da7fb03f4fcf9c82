#include "summens/copymix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "summens/rng.hpp"

namespace summens {

namespace {

constexpr double kBackoffWeight = 0.4;

void count_sequence(std::vector<ContextTable>& tables, const TokenIds& summary_ids, int order) {
  // Unigrams count the summary tokens plus the terminating EOS; higher
  // orders additionally see the single leading BOS.
  TokenIds padded;
  padded.reserve(summary_ids.size() + 2);
  padded.push_back(Vocab::kBos);
  padded.insert(padded.end(), summary_ids.begin(), summary_ids.end());
  padded.push_back(Vocab::kEos);

  for (std::size_t i = 1; i < padded.size(); ++i) {
    auto& unigram = tables[0][TokenIds{}];
    unigram.next[padded[i]] += 1.0;
    unigram.total += 1.0;
  }
  for (int k = 2; k <= order; ++k) {
    for (std::size_t i = 0; i + k <= padded.size(); ++i) {
      TokenIds ctx(padded.begin() + i, padded.begin() + i + k - 1);
      auto& counts = tables[static_cast<std::size_t>(k - 1)][std::move(ctx)];
      counts.next[padded[i + k - 1]] += 1.0;
      counts.total += 1.0;
    }
  }
}

}  // namespace

CopyMixModel::CopyMixModel(Vocab vocab, CopyMixConfig config, double lambda,
                           std::vector<ContextTable> tables, std::uint64_t shard_seed)
    : vocab_(std::move(vocab)),
      config_(config),
      lambda_(lambda),
      shard_seed_(shard_seed),
      tables_(std::move(tables)) {
  if (config_.order < 1) throw std::invalid_argument("CopyMixModel: order must be >= 1");
  if (config_.alpha <= 0.0) throw std::invalid_argument("CopyMixModel: alpha must be > 0");
  if (config_.eos_share < 0.0 || config_.eos_share > 1.0) {
    throw std::invalid_argument("CopyMixModel: eos_share must be in [0, 1]");
  }
  if (lambda_ < 0.0 || lambda_ > 1.0) {
    throw std::invalid_argument("CopyMixModel: lambda must be in [0, 1]");
  }
  tables_.resize(static_cast<std::size_t>(config_.order));
  finalize();
}

void CopyMixModel::finalize() {
  const auto vocab_size = static_cast<std::size_t>(vocab_.size());
  backoff_pow_.assign(static_cast<std::size_t>(config_.order), 1.0);
  for (std::size_t j = 1; j < backoff_pow_.size(); ++j) {
    backoff_pow_[j] = backoff_pow_[j - 1] * kBackoffWeight;
  }

  // Smoothed unigram floor, pre-discounted by the full backoff chain.
  const auto& unigram = tables_[0][TokenIds{}];
  const double denom = unigram.total + config_.alpha * static_cast<double>(vocab_size);
  const double discount = backoff_pow_[static_cast<std::size_t>(config_.order - 1)];
  backoff_base_.assign(vocab_size, 0.0);
  for (std::size_t w = 0; w < vocab_size; ++w) {
    double count = config_.alpha;
    const auto it = unigram.next.find(static_cast<TokenId>(w));
    if (it != unigram.next.end()) count += it->second;
    backoff_base_[w] = discount * (count / denom);
  }
}

void CopyMixModel::check_ids(std::span<const TokenId> ids) const {
  for (const TokenId id : ids) {
    if (id < 0 || id >= vocab_.size()) {
      throw std::invalid_argument("CopyMixModel: token id out of vocabulary");
    }
  }
}

Distribution CopyMixModel::backoff_distribution(std::span<const TokenId> prefix) const {
  check_ids(prefix);
  std::vector<double> score = backoff_base_;

  TokenIds padded;
  padded.reserve(prefix.size() + 1);
  padded.push_back(Vocab::kBos);
  padded.insert(padded.end(), prefix.begin(), prefix.end());

  // Higher orders override lower ones: the final score of a token is
  // 0.4^(order-k) * MLE at the highest order k where its continuation
  // count is positive.
  for (int k = 2; k <= config_.order; ++k) {
    const auto ctx_len = static_cast<std::size_t>(k - 1);
    if (padded.size() < ctx_len) continue;
    TokenIds ctx(padded.end() - static_cast<std::ptrdiff_t>(ctx_len), padded.end());
    const auto& table = tables_[static_cast<std::size_t>(k - 1)];
    const auto it = table.find(ctx);
    if (it == table.end() || it->second.total <= 0.0) continue;
    const double weight = backoff_pow_[static_cast<std::size_t>(config_.order - k)];
    for (const auto& [tok, count] : it->second.next) {
      score[static_cast<std::size_t>(tok)] = weight * (count / it->second.total);
    }
  }

  double sum = 0.0;
  for (const double s : score) sum += s;
  Distribution d;
  d.probs.resize(score.size());
  for (std::size_t i = 0; i < score.size(); ++i) d.probs[i] = score[i] / sum;
  return d;
}

Distribution CopyMixModel::copy_distribution(std::span<const TokenId> input) const {
  check_ids(input);
  Distribution d;
  d.probs.assign(static_cast<std::size_t>(vocab_.size()), 0.0);
  double total = 0.0;
  for (const TokenId id : input) {
    if (!Vocab::is_reserved(id)) {
      d.probs[static_cast<std::size_t>(id)] += 1.0;
      total += 1.0;
    }
  }
  if (total > 0.0) {
    const double scale = (1.0 - config_.eos_share) / total;
    for (double& p : d.probs) p *= scale;
    d.probs[Vocab::kEos] += config_.eos_share;
  } else {
    // No copyable content: everything terminates.
    d.probs[Vocab::kEos] = 1.0;
  }
  return d;
}

Distribution CopyMixModel::next_distribution(std::span<const TokenId> input,
                                             std::span<const TokenId> prefix) const {
  check_ids(input);
  check_ids(prefix);
  if (lambda_ == 0.0) return backoff_distribution(prefix);
  if (lambda_ == 1.0) return copy_distribution(input);
  const Distribution copy = copy_distribution(input);
  const Distribution backoff = backoff_distribution(prefix);
  Distribution d;
  d.probs.resize(copy.probs.size());
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    d.probs[i] = lambda_ * copy.probs[i] + (1.0 - lambda_) * backoff.probs[i];
  }
  return d;
}

CopyMixModel CopyMixModel::with_lambda(double lambda) const {
  return CopyMixModel(vocab_, config_, lambda, tables_, shard_seed_);
}

nlohmann::json CopyMixModel::to_json() const {
  nlohmann::json j;
  j["format"] = "copymix";
  j["version"] = 1;
  j["order"] = config_.order;
  j["alpha"] = config_.alpha;
  j["eos_share"] = config_.eos_share;
  j["lambda"] = lambda_;
  j["shard_seed"] = shard_seed_;
  std::vector<std::string> content(vocab_.tokens().begin() + Vocab::kNumReserved,
                                   vocab_.tokens().end());
  j["tokens"] = content;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& table : tables_) {
    nlohmann::json tj = nlohmann::json::object();
    for (const auto& [ctx, counts] : table) {
      std::string key;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i) key.push_back(',');
        key += std::to_string(ctx[i]);
      }
      nlohmann::json next = nlohmann::json::object();
      for (const auto& [tok, count] : counts.next) next[std::to_string(tok)] = count;
      tj[key] = {{"total", counts.total}, {"next", next}};
    }
    tables.push_back(tj);
  }
  j["tables"] = tables;
  return j;
}

CopyMixModel CopyMixModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "copymix") throw std::runtime_error("copymix: bad format tag");
  if (j.value("version", 0) != 1) throw std::runtime_error("copymix: unsupported version");
  CopyMixConfig config;
  config.order = j.at("order").get<int>();
  config.alpha = j.at("alpha").get<double>();
  config.eos_share = j.at("eos_share").get<double>();
  const Vocab vocab(j.at("tokens").get<std::vector<std::string>>());
  std::vector<ContextTable> tables;
  for (const auto& tj : j.at("tables")) {
    ContextTable table;
    for (const auto& [key, value] : tj.items()) {
      TokenIds ctx;
      if (!key.empty()) {
        std::size_t pos = 0;
        while (pos <= key.size()) {
          const std::size_t comma = key.find(',', pos);
          const std::size_t end = comma == std::string::npos ? key.size() : comma;
          ctx.push_back(std::stoi(key.substr(pos, end - pos)));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      }
      ContextCounts counts;
      counts.total = value.at("total").get<double>();
      for (const auto& [tok, count] : value.at("next").items()) {
        counts.next[std::stoi(tok)] = count.get<double>();
      }
      table[std::move(ctx)] = std::move(counts);
    }
    tables.push_back(std::move(table));
  }
  return CopyMixModel(vocab, config, j.at("lambda").get<double>(), std::move(tables),
                      j.at("shard_seed").get<std::uint64_t>());
}

CopyMixModel train_copymix(std::span<const TrainPair> corpus, const TrainOptions& options,
                           const Vocab& vocab, std::uint64_t shard_seed) {
  if (corpus.empty()) throw std::invalid_argument("train_copymix: empty corpus");
  if (options.lambda_grid.empty()) throw std::invalid_argument("train_copymix: empty lambda grid");

  // Seeded shuffle split: first 80% trains the counts, the rest selects
  // lambda.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(shard_seed);
  rng.shuffle(order);
  std::size_t train_count = (corpus.size() * 8) / 10;
  if (train_count == 0) train_count = 1;

  std::vector<ContextTable> tables(static_cast<std::size_t>(options.config.order));
  for (std::size_t i = 0; i < train_count; ++i) {
    const TokenIds summary_ids = vocab.encode(corpus[order[i]].second);
    count_sequence(tables, summary_ids, options.config.order);
  }

  CopyMixModel base(vocab, options.config, options.lambda_grid.front(), std::move(tables),
                    shard_seed);

  if (train_count >= corpus.size() || options.lambda_grid.size() == 1) return base;

  double best_ll = -std::numeric_limits<double>::infinity();
  double best_lambda = options.lambda_grid.front();
  bool first = true;
  for (const double lambda : options.lambda_grid) {
    const CopyMixModel candidate = base.with_lambda(lambda);
    double ll = 0.0;
    for (std::size_t i = train_count; i < corpus.size(); ++i) {
      const TokenIds input_ids = vocab.encode(corpus[order[i]].first);
      TokenIds target = vocab.encode(corpus[order[i]].second);
      target.push_back(Vocab::kEos);
      ll += sequence_logprob(candidate, input_ids, target);
      if (std::isinf(ll)) break;
    }
    if (first || ll > best_ll) {
      best_ll = ll;
      best_lambda = lambda;
      first = false;
    }
  }
  return base.with_lambda(best_lambda);
}

CopyMixModel train_copymix(std::span<const TrainPair> corpus, const TrainOptions& options,
                           std::uint64_t shard_seed) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size() * 2);
  for (const auto& [input, summary] : corpus) {
    texts.push_back(input);
    texts.push_back(summary);
  }
  return train_copymix(corpus, options, Vocab::from_corpus(texts), shard_seed);
}

}  // namespace summens
