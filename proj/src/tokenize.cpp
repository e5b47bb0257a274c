#include "binomials/tokenize.hpp"

#include <algorithm>
#include <array>

#include "binomials/text_io.hpp"

namespace binomials {

namespace {

enum CharClass : std::uint8_t { kSplit = 0, kWord = 1, kSeparator = 2, kApostrophe = 3 };

constexpr std::array<std::uint8_t, 256> make_classes() {
  std::array<std::uint8_t, 256> t{};
  for (int c = 0; c < 256; ++c) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c >= 0x80) {
      t[static_cast<std::size_t>(c)] = kWord;
    }
  }
  t[static_cast<unsigned char>(',')] = kSeparator;
  t[static_cast<unsigned char>('/')] = kSeparator;
  t[static_cast<unsigned char>('\'')] = kApostrophe;
  return t;
}

constexpr auto kClasses = make_classes();

inline std::uint8_t cls(char c) { return kClasses[static_cast<unsigned char>(c)]; }
inline bool is_word(char c) { return cls(c) == kWord; }

}  // namespace

std::vector<Token> TokenizedText::to_tokens() const {
  std::vector<Token> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Token{std::string((*this)[i]), i});
  return out;
}

TokenizedText TokenizedText::from_tokens(const std::vector<Token>& tokens) {
  TokenizedText t;
  for (const auto& tok : tokens) {
    t.spans_.emplace_back(static_cast<std::uint32_t>(t.lowered_.size()), static_cast<std::uint32_t>(tok.surface.size()));
    t.lowered_ += tok.surface;
    t.lowered_ += ' ';
  }
  return t;
}

Tokenizer::Tokenizer(TokenizerConfig config) : config_(std::move(config)) {
  for (const auto& a : config_.abbreviations) {
    if (!a.empty()) abbreviations_.push_back(to_lower_ascii(a));
  }
  std::sort(abbreviations_.begin(), abbreviations_.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  for (const auto& a : abbreviations_) {
    for (const char c : a) {
      if (!is_word(c)) abbreviation_stops_[static_cast<unsigned char>(c)] = true;
    }
  }
}

std::size_t Tokenizer::match_abbreviation(std::string_view lowered, std::size_t pos) const {
  for (const auto& a : abbreviations_) {
    if (lowered.compare(pos, a.size(), a) != 0) continue;
    const std::size_t end = pos + a.size();
    if (end == lowered.size() || !is_word(lowered[end])) return a.size();
  }
  return 0;
}

void Tokenizer::tokenize(std::string_view text, TokenizedText& out) const {
  auto& low = out.lowered_;
  low.assign(text);
  for (char& c : low) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  out.spans_.clear();
  const std::size_t n = low.size();
  const std::string_view view(low);
  std::size_t i = 0;
  while (i < n) {
    const std::uint8_t k = cls(low[i]);
    if (k == kSeparator) {
      out.spans_.emplace_back(static_cast<std::uint32_t>(i), 1u);
      ++i;
      continue;
    }
    if (k != kWord) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (config_.join_reddit_links && (low[i] == 'r' || low[i] == 'u') && i + 2 < n && low[i + 1] == '/' &&
        is_word(low[i + 2])) {
      i += 2;
    }
    while (i < n) {
      const std::uint8_t c = cls(low[i]);
      if (c == kWord) {
        ++i;
      } else if (c == kApostrophe && i + 1 < n && is_word(low[i + 1])) {
        i += 2;
      } else {
        break;
      }
    }
    // Abbreviations are only possible where a word stops on punctuation they contain.
    if (i < n && abbreviation_stops_[static_cast<unsigned char>(low[i])]) {
      if (const std::size_t len = match_abbreviation(view, start); len > 0) i = start + len;
    }
    out.spans_.emplace_back(static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(i - start));
  }
}

std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config) {
  TokenizedText t;
  Tokenizer(config).tokenize(text, t);
  return t.to_tokens();
}

}  // namespace binomials
