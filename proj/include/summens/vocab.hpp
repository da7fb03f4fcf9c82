#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace summens {

using TokenId = int;
using TokenIds = std::vector<TokenId>;

// Dense token <-> id map with fixed reserved ids. The field separators
// mark where the assessment / subjective / objective sections start in
// an assembled model input.
class Vocab {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;
  static constexpr TokenId kSepA = 3;
  static constexpr TokenId kSepS = 4;
  static constexpr TokenId kSepO = 5;
  static constexpr int kNumReserved = 6;

  static constexpr const char* kSepALiteral = "<asm>";
  static constexpr const char* kSepSLiteral = "<subj>";
  static constexpr const char* kSepOLiteral = "<obj>";

  // Reserved tokens only.
  Vocab();

  // Reserved tokens followed by the given content tokens (first
  // occurrence wins; reserved literals are skipped if present).
  explicit Vocab(const std::vector<std::string>& content_tokens);

  // Tokenizes every text (separators handled as single tokens), then
  // builds a vocab over the sorted unique content tokens. Deterministic
  // for a given text sequence.
  static Vocab from_corpus(std::span<const std::string> texts);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& token(TokenId id) const;
  std::optional<TokenId> id_of(std::string_view token) const;
  static bool is_reserved(TokenId id) { return id >= 0 && id < kNumReserved; }

  // Separator literals become their reserved ids, everything else goes
  // through tokenize(); unknown tokens map to kUnk. No BOS/EOS added.
  TokenIds encode(std::string_view text) const;

  // Joins tokens with single spaces, skipping BOS and EOS.
  std::string decode(std::span<const TokenId> ids) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;

  void add_token(const std::string& tok);
};

}  // namespace summens
