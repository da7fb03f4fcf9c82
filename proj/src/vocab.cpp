#include "summens/vocab.hpp"

#include <array>
#include <set>
#include <stdexcept>

#include "summens/text.hpp"

namespace summens {

namespace {

constexpr std::array<const char*, Vocab::kNumReserved> kReservedLiterals = {
    "<s>", "</s>", "<unk>", Vocab::kSepALiteral, Vocab::kSepSLiteral, Vocab::kSepOLiteral};

// Splits text at reserved literals (longest match wins at equal
// positions, so "<subj>" beats "<s>"). Calls on_segment for the plain
// text between them and on_reserved for each literal hit.
template <class SegmentFn, class ReservedFn>
void scan_reserved(std::string_view text, SegmentFn&& on_segment, ReservedFn&& on_reserved) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = std::string_view::npos;
    std::size_t len = 0;
    TokenId id = Vocab::kUnk;
    for (int r = 0; r < Vocab::kNumReserved; ++r) {
      const std::string_view lit = kReservedLiterals[static_cast<std::size_t>(r)];
      const std::size_t at = text.find(lit, pos);
      if (at == std::string_view::npos) continue;
      if (at < next || (at == next && lit.size() > len)) {
        next = at;
        len = lit.size();
        id = r;
      }
    }
    const std::size_t end = next == std::string_view::npos ? text.size() : next;
    if (end > pos) on_segment(text.substr(pos, end - pos));
    if (next == std::string_view::npos) return;
    on_reserved(id);
    pos = next + len;
  }
}

}  // namespace

Vocab::Vocab() {
  for (const char* lit : kReservedLiterals) add_token(lit);
}

Vocab::Vocab(const std::vector<std::string>& content_tokens) : Vocab() {
  for (const auto& tok : content_tokens) {
    if (tok.empty() || ids_.count(tok)) continue;
    add_token(tok);
  }
}

void Vocab::add_token(const std::string& tok) {
  ids_.emplace(tok, static_cast<TokenId>(tokens_.size()));
  tokens_.push_back(tok);
}

Vocab Vocab::from_corpus(std::span<const std::string> texts) {
  std::set<std::string> unique;
  for (const auto& text : texts) {
    scan_reserved(
        text,
        [&](std::string_view segment) {
          for (auto& tok : tokenize(segment)) unique.insert(std::move(tok));
        },
        [](TokenId) {});
  }
  return Vocab(std::vector<std::string>(unique.begin(), unique.end()));
}

const std::string& Vocab::token(TokenId id) const {
  if (id < 0 || id >= size()) throw std::invalid_argument("Vocab::token: id out of range");
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> Vocab::id_of(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it == ids_.end() ? std::nullopt : std::optional<TokenId>(it->second);
}

TokenIds Vocab::encode(std::string_view text) const {
  TokenIds out;
  scan_reserved(
      text,
      [&](std::string_view segment) {
        for (const auto& tok : tokenize(segment)) {
          out.push_back(id_of(tok).value_or(kUnk));
        }
      },
      [&](TokenId id) { out.push_back(id); });
  return out;
}

std::string Vocab::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (const TokenId id : ids) {
    if (id == kBos || id == kEos) continue;
    const std::string& tok = token(id);
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

}  // namespace summens
