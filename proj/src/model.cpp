#include "summens/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace summens {

bool Distribution::is_valid(double tol) const {
  double sum = 0.0;
  for (const double p : probs) {
    if (std::isnan(p) || p < 0.0) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

void Distribution::validate(double tol) const {
  if (!is_valid(tol)) throw std::invalid_argument("Distribution: invalid probability vector");
}

double sequence_logprob(const SequenceModel& model, std::span<const TokenId> input,
                        std::span<const TokenId> y) {
  if (y.empty() || y.back() != Vocab::kEos) {
    throw std::invalid_argument("sequence_logprob: sequence must be non-empty and end with EOS");
  }
  const int vocab_size = model.vocab().size();
  for (const TokenId id : y) {
    if (id < 0 || id >= vocab_size) {
      throw std::invalid_argument("sequence_logprob: token id out of vocabulary");
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Distribution d = model.next_distribution(input, y.subspan(0, i));
    const double p = d.probs[static_cast<std::size_t>(y[i])];
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(p);
  }
  return total;
}

TableModel::TableModel(Vocab vocab, Distribution default_dist)
    : vocab_(std::move(vocab)), default_(std::move(default_dist)) {
  if (default_.size() != static_cast<std::size_t>(vocab_.size())) {
    throw std::invalid_argument("TableModel: default distribution size mismatch");
  }
  default_.validate();
}

void TableModel::check_ids(std::span<const TokenId> ids) const {
  for (const TokenId id : ids) {
    if (id < 0 || id >= vocab_.size()) {
      throw std::invalid_argument("TableModel: token id out of vocabulary");
    }
  }
}

void TableModel::set_entry(TokenIds input, TokenIds prefix, Distribution dist) {
  check_ids(input);
  check_ids(prefix);
  if (dist.size() != static_cast<std::size_t>(vocab_.size())) {
    throw std::invalid_argument("TableModel: entry distribution size mismatch");
  }
  dist.validate();
  TokenIds key = std::move(input);
  key.push_back(-1);
  key.insert(key.end(), prefix.begin(), prefix.end());
  entries_[std::move(key)] = std::move(dist);
}

Distribution TableModel::next_distribution(std::span<const TokenId> input,
                                           std::span<const TokenId> prefix) const {
  check_ids(input);
  check_ids(prefix);
  TokenIds key(input.begin(), input.end());
  key.push_back(-1);
  key.insert(key.end(), prefix.begin(), prefix.end());
  const auto it = entries_.find(key);
  return it == entries_.end() ? default_ : it->second;
}

namespace {

Distribution dist_from_token_map(const Vocab& vocab, const nlohmann::json& j) {
  Distribution d;
  d.probs.assign(static_cast<std::size_t>(vocab.size()), 0.0);
  for (const auto& [tok, value] : j.items()) {
    const auto id = vocab.id_of(tok);
    if (!id) throw std::runtime_error("table model: unknown token '" + tok + "'");
    d.probs[static_cast<std::size_t>(*id)] = value.get<double>();
  }
  d.validate();
  return d;
}

nlohmann::json dist_to_token_map(const Vocab& vocab, const Distribution& d) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    if (d.probs[i] != 0.0) out[vocab.token(static_cast<TokenId>(i))] = d.probs[i];
  }
  return out;
}

TokenIds ids_from_json(const nlohmann::json& j, const Vocab& vocab) {
  TokenIds ids;
  for (const auto& tok : j) {
    const auto id = vocab.id_of(tok.get<std::string>());
    if (!id) throw std::runtime_error("table model: unknown token in context");
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

TableModel TableModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "table-model") {
    throw std::runtime_error("table model: bad format tag");
  }
  if (j.value("version", 0) != 1) throw std::runtime_error("table model: unsupported version");
  const Vocab vocab(j.at("tokens").get<std::vector<std::string>>());
  TableModel model(vocab, dist_from_token_map(vocab, j.at("default")));
  for (const auto& entry : j.at("entries")) {
    model.set_entry(ids_from_json(entry.at("input"), vocab),
                    ids_from_json(entry.at("prefix"), vocab),
                    dist_from_token_map(vocab, entry.at("probs")));
  }
  return model;
}

nlohmann::json TableModel::to_json() const {
  nlohmann::json j;
  j["format"] = "table-model";
  j["version"] = 1;
  std::vector<std::string> content(vocab_.tokens().begin() + Vocab::kNumReserved,
                                   vocab_.tokens().end());
  j["tokens"] = content;
  j["default"] = dist_to_token_map(vocab_, default_);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, dist] : entries_) {
    const auto sep = std::find(key.begin(), key.end(), -1);
    nlohmann::json input = nlohmann::json::array();
    for (auto it = key.begin(); it != sep; ++it) input.push_back(vocab_.token(*it));
    nlohmann::json prefix = nlohmann::json::array();
    for (auto it = sep + 1; it != key.end(); ++it) prefix.push_back(vocab_.token(*it));
    entries.push_back({{"input", input}, {"prefix", prefix}, {"probs", dist_to_token_map(vocab_, dist)}});
  }
  j["entries"] = entries;
  return j;
}

}  // namespace summens
