#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "binomials/corpus.hpp"
#include "binomials/tokenize.hpp"

namespace binomials {

/// Transparent hash and equality so string-keyed containers accept std::string_view lookups.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return absl::Hash<absl::string_view>{}(absl::string_view(s.data(), s.size()));
  }
};
struct StringEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
};

template <typename V>
using StringMap = absl::flat_hash_map<std::string, V, StringHash, StringEq>;
using StringSet = absl::flat_hash_set<std::string, StringHash, StringEq>;

enum class Separator : std::uint8_t { and_, or_, vs, slash, comma };

/// Maps a token to the list separator it denotes: and, or, vs / vs. / v.s., '/', ','.
std::optional<Separator> separator_of(std::string_view token);
std::string_view to_string(Separator sep);

enum class Method : std::uint8_t {
  all_words,
  names_only,
  /// Comma lists `A, B(,) and C` of content words; only produced when enabled.
  all_words_extended,
};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

inline constexpr std::size_t kMaxListLength = 50;

struct ListInstance {
  std::vector<std::string> items;
  std::vector<Separator> separators;
  Method method = Method::all_words;
  SeasonKey slice;

  bool operator==(const ListInstance&) const = default;
};

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(StringSet words) : words_(std::move(words)) {}

  /// One word per line, `#` comments; words are lowercased.
  static StopWordList parse(std::string_view text);
  static StopWordList load(const std::filesystem::path& path);
  /// The curated default list, identical to data/stopwords.txt.
  static const StopWordList& builtin();

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  const StringSet& words() const { return words_; }

 private:
  StringSet words_;
};

/// Full names with their matchable parts, aliases, and metadata attributes.
class NameCatalog {
 public:
  struct Entry {
    std::string name;                                 // lowercased canonical full name
    std::vector<std::string> aliases;                 // lowercased
    std::map<std::string, std::string> attributes;    // key -> raw value
  };

  NameCatalog() = default;

  /// Parses `Full Name|alias1,alias2|key=value;key=value` lines.
  static NameCatalog parse(std::string_view text, const TokenizerConfig& tokenizer = {});
  static NameCatalog load(const std::filesystem::path& path, const TokenizerConfig& tokenizer = {});

  void add(Entry entry, const Tokenizer& tokenizer);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(std::string_view canonical) const;
  bool empty() const { return entries_.empty(); }

  /// Canonical names owning a part key (tokens joined by single spaces).
  const std::vector<std::size_t>* owners(std::string_view part_key) const;
  const StringMap<std::vector<std::size_t>>& parts_index() const { return parts_; }

  /// Resolves a matched part: the sole owner, else the priority owner, else the part itself.
  std::string resolve(std::string_view part_key) const;

  /// Longest catalog match starting at token `pos`; returns the token count (0 if none).
  std::size_t match_at(const TokenizedText& tokens, std::size_t pos, std::string& key_scratch) const;

  std::optional<double> numeric_attribute(std::string_view canonical, std::string_view key) const;
  std::optional<std::string> attribute(std::string_view canonical, std::string_view key) const;
  bool has_attribute_key(std::string_view key) const;

 private:
  void index_part(std::string key, std::size_t owner);

  std::vector<Entry> entries_;
  StringMap<std::size_t> by_name_;
  StringMap<std::vector<std::size_t>> parts_;
  StringMap<std::size_t> max_tokens_by_first_;  // first token -> longest key length in tokens
};

/// Whether the token may serve as a list item under All Words.
inline bool is_content_word(std::string_view token, const StopWordList& stopwords) {
  return !separator_of(token) && !stopwords.contains(token);
}

/// Visits All Words lists as (items, separators, method). With `extended`,
/// comma chains `A, B(,) and C` are emitted whole (up to 50 items) and the
/// trailing `B and C` window they contain is not emitted separately.
/// Lists whose items are not pairwise distinct are dropped.
template <typename Emit>
void scan_all_words(const TokenizedText& tokens, const StopWordList& stopwords, bool extended, Emit&& emit) {
  const std::size_t n = tokens.size();
  std::string_view items[kMaxListLength];
  Separator seps[kMaxListLength];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto sep = separator_of(tokens[i]);
    if (sep != Separator::and_ && sep != Separator::or_) continue;
    const std::string_view last = tokens[i + 1];
    if (!is_content_word(last, stopwords)) continue;
    std::size_t j = i - 1;
    const bool oxford = tokens[j] == ",";
    if (oxford) {
      if (!extended || j == 0) continue;
      --j;
    }
    if (!is_content_word(tokens[j], stopwords)) continue;
    // items are collected right to left, then reversed into place
    std::size_t count = 0;
    items[count++] = last;
    items[count++] = tokens[j];
    if (extended) {
      std::size_t k = j;
      while (count < kMaxListLength && k >= 2 && tokens[k - 1] == "," && is_content_word(tokens[k - 2], stopwords)) {
        items[count++] = tokens[k - 2];
        k -= 2;
      }
    }
    if (count == 2 && oxford) continue;
    std::reverse(items, items + count);
    bool distinct = true;
    for (std::size_t a = 0; a < count && distinct; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) {
        if (items[a] == items[b]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    for (std::size_t s = 0; s + 2 < count; ++s) seps[s] = Separator::comma;
    seps[count - 2] = *sep;
    emit(std::span<const std::string_view>(items, count), std::span<const Separator>(seps, count - 1),
         count == 2 ? Method::all_words : Method::all_words_extended);
  }
}

/// A catalog match in a token stream.
struct NameMatch {
  std::size_t start = 0;
  std::size_t length = 0;
  std::string canonical;
};

/// Greedy left-to-right longest matches of catalog parts. Separator tokens never match.
void find_name_matches(const TokenizedText& tokens, const NameCatalog& catalog, std::vector<NameMatch>& out);

/// Visits Names Only lists over precomputed matches: N1, N2, ..., N(k-1)(,) SEP Nk
/// with SEP one of and/or/vs/'/' and 2 <= k <= 50. Scanning resumes at Nk.
template <typename Emit>
void scan_name_lists(const TokenizedText& tokens, const std::vector<NameMatch>& matches, Emit&& emit) {
  const std::size_t m = matches.size();
  if (m < 2) return;
  // link[a]: separator joining match a to match a+1, if they are adjacent through one.
  std::vector<std::optional<Separator>> link(m - 1);
  for (std::size_t a = 0; a + 1 < m; ++a) {
    const std::size_t gap_begin = matches[a].start + matches[a].length;
    const std::size_t gap = matches[a + 1].start - gap_begin;
    if (gap == 1) {
      link[a] = separator_of(tokens[gap_begin]);
    } else if (gap == 2 && tokens[gap_begin] == ",") {
      const auto s = separator_of(tokens[gap_begin + 1]);
      if (s && *s != Separator::comma) link[a] = s;
    }
  }
  std::string_view items[kMaxListLength];
  Separator seps[kMaxListLength];
  std::size_t a = 0;
  while (a + 1 < m) {
    std::size_t e = a;
    while (e + 1 < m && link[e] == Separator::comma && e - a + 2 < kMaxListLength) ++e;
    if (e + 1 < m && link[e] && *link[e] != Separator::comma) {
      const std::size_t count = e - a + 2;
      bool distinct = true;
      for (std::size_t x = 0; x < count; ++x) {
        items[x] = matches[a + x].canonical;
        if (x + 1 < count) seps[x] = *link[a + x];
        for (std::size_t y = 0; y < x; ++y) distinct = distinct && items[y] != items[x];
      }
      if (distinct) {
        emit(std::span<const std::string_view>(items, count), std::span<const Separator>(seps, count - 1),
             Method::names_only);
      }
      a = e + 1;
    } else {
      ++a;
    }
  }
}

std::vector<ListInstance> extract_all_words(const std::vector<Token>& tokens, const StopWordList& stopwords,
                                            bool extended = false);
std::vector<ListInstance> extract_name_lists(const std::vector<Token>& tokens, const NameCatalog& catalog);

}  // namespace binomials
