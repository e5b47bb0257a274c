#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace binomials {

struct TokenizerConfig {
  /// Period-bearing tokens kept whole, matched case-insensitively at word starts.
  std::vector<std::string> abbreviations = {"v.s.", "vs.", "u.s."};
  /// Keep Reddit links such as r/nba and u/name as single tokens.
  bool join_reddit_links = true;
};

struct Token {
  std::string surface;
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

/// Token spans over a lowercased copy of one document. Reused across documents
/// to avoid reallocation; views are valid until the next tokenize call.
class TokenizedText {
 public:
  std::size_t size() const { return spans_.size(); }
  bool empty() const { return spans_.empty(); }
  std::string_view operator[](std::size_t i) const {
    return std::string_view(lowered_).substr(spans_[i].first, spans_[i].second);
  }

  std::vector<Token> to_tokens() const;
  /// Rebuilds a token stream from already-tokenized surfaces.
  static TokenizedText from_tokens(const std::vector<Token>& tokens);

 private:
  friend class Tokenizer;
  std::string lowered_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans_;
};

/// Splits on whitespace and punctuation. Commas and slashes are kept as their
/// own tokens since they separate list items. Apostrophes between word
/// characters stay inside the word (don't, 6'5), as do configured abbreviations.
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerConfig config = {});

  void tokenize(std::string_view text, TokenizedText& out) const;

 private:
  std::size_t match_abbreviation(std::string_view lowered, std::size_t pos) const;

  TokenizerConfig config_;
  std::vector<std::string> abbreviations_;  // lowercased, longest first
  std::array<bool, 256> abbreviation_stops_{};  // non-word characters occurring in an abbreviation
};

std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config = {});

}  // namespace binomials
