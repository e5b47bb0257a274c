#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "binomials/corpus.hpp"
#include "binomials/extraction.hpp"

namespace binomials {

struct ListKey {
  Method method = Method::all_words;
  std::vector<std::string> items;  // observed order
  SeasonKey slice;

  auto operator<=>(const ListKey&) const = default;
};

/// Non-owning view of one ListCounts entry; valid while the counts are unchanged.
struct ListView {
  Method method = Method::all_words;
  std::vector<std::string_view> items;
  std::string_view community;
  int season_year = kUndatedSeason;
  std::uint64_t count = 0;
  std::string_view raw;  // encoded key
};

/// Counts of ordered lists per (method, slice). Merging is commutative and
/// associative, so shards can be aggregated in any order.
class ListCounts {
 public:
  void add(Method method, std::string_view community, int season_year, std::span<const std::string_view> items,
           std::uint64_t n = 1);
  void add(const ListInstance& instance, std::uint64_t n = 1);
  void add(const ListKey& key, std::uint64_t n);
  void merge(const ListCounts& other);

  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  std::uint64_t total() const;

  /// Entries sorted by (method, items, slice).
  std::vector<std::pair<ListKey, std::uint64_t>> entries() const;
  /// The same entries as views, in the same order unless `sorted` is false.
  std::vector<ListView> views(bool sorted = true) const;

  /// Tab-separated table: method, community, season ('-' when undated), count, items...
  std::string to_tsv() const;
  static ListCounts from_tsv(std::string_view text);

  bool operator==(const ListCounts& other) const { return counts_ == other.counts_; }

 private:
  // (key, count) pairs in key byte order
  std::vector<std::pair<std::string_view, std::uint64_t>> sorted_keys() const;
  friend ListCounts filter_min_count(const ListCounts& counts, std::uint64_t k);
  friend std::vector<std::tuple<Method, std::size_t, std::uint64_t>> length_histogram(const ListCounts& counts);
  StringMap<std::uint64_t> counts_;
};

/// Keeps only unordered item sets (per method) seen at least `k` times in total.
/// Throws ArgumentError for k == 0.
ListCounts filter_min_count(const ListCounts& counts, std::uint64_t k);
ListCounts filter_min_count(const std::vector<ListInstance>& instances, std::uint64_t k);

/// Mergeable word -> count map (unigram frequencies, entity mentions).
class WordCounts {
 public:
  void add(std::string_view word, std::uint64_t n = 1);
  void merge(const WordCounts& other);
  std::uint64_t get(std::string_view word) const;
  std::size_t size() const { return counts_.size(); }
  std::vector<std::pair<std::string, std::uint64_t>> entries() const;

  std::string to_tsv() const;
  static WordCounts from_tsv(std::string_view text);

  bool operator==(const WordCounts& other) const { return counts_ == other.counts_; }

 private:
  StringMap<std::uint64_t> counts_;
};

/// Number of list instances by (method, length), the list-length histogram.
std::vector<std::tuple<Method, std::size_t, std::uint64_t>> length_histogram(const ListCounts& counts);

}  // namespace binomials
