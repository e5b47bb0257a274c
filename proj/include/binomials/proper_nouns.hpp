#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binomials/counts.hpp"
#include "binomials/extraction.hpp"
#include "binomials/metrics.hpp"
#include "binomials/predictors.hpp"

namespace binomials {

/// The entity each community identifies with, keyed by community.
using HomeMap = std::map<std::string, std::string, std::less<>>;

/// `community=entity` lines, `#` comments; entities are lowercased.
HomeMap parse_home_map(std::string_view text);
HomeMap load_home_map(const std::filesystem::path& path);

struct HomeContext {
  std::string community;
  std::string home_entity;
};

struct ProximityResult {
  std::uint64_t home_first = 0;
  std::uint64_t home_second = 0;
  double fraction_first = 0;
  double fraction_second = 0;
};

/// Orientation counts of two-item Names Only lists in the community that contain
/// the home entity. Throws EmptyInputError when none qualify.
ProximityResult proximity_counts(const ListCounts& lists, const HomeContext& context);
ProximityResult proximity_from_counts(std::uint64_t home_first, std::uint64_t home_second);

struct MatrixCell {
  std::uint64_t n = 0;
  std::optional<double> score;  // empty below the floor
};

struct CrossCommunityMatrix {
  std::vector<std::string> communities;  // rows and columns, sorted
  std::vector<std::vector<MatrixCell>> cells;  // cells[row][col]; the diagonal stays empty
};

/// Cell (c, d): among two-item Names Only lists in community c containing both
/// home(c) and home(d), the share with home(c) first. Cells under `floor` lists are null.
CrossCommunityMatrix cross_community_matrix(const ListCounts& lists, const HomeMap& homes,
                                            std::uint64_t floor = 30);

std::string cross_community_csv(const CrossCommunityMatrix& m);

struct PartyOrderCounts {
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;  // (party of first item, party of second)
  std::uint64_t qualifying = 0;        // two-item Names Only list instances considered
  std::uint64_t missing_party = 0;     // excluded: an item without the party attribute

  std::uint64_t counted() const;
};

/// Counts party orientations of two-item Names Only lists, optionally in one community.
PartyOrderCounts party_order_counts(const ListCounts& lists, const NameCatalog& catalog,
                                    std::string_view party_key = "party",
                                    std::optional<std::string_view> community = std::nullopt);

std::string party_order_csv(const PartyOrderCounts& p);

/// Numeric attributes from a catalog plus derived per-entity values.
class EntityMetadata {
 public:
  explicit EntityMetadata(const NameCatalog& catalog) : catalog_(&catalog) {}

  void set(std::string_view entity, std::string_view key, double value);
  std::optional<double> numeric(std::string_view entity, std::string_view key) const;
  bool has_key(std::string_view key) const;

 private:
  const NameCatalog* catalog_;
  std::map<std::string, std::map<std::string, double, std::less<>>, std::less<>> derived_;
};

/// Derived attribute `team_mentions`: in-corpus mentions of each entity's `team` value.
void add_team_mentions(EntityMetadata& metadata, const NameCatalog& catalog, const WordCounts& mentions,
                       const WordCounts& unigrams);

/// Larger attribute value first (smaller when !higher_first); empty on ties or
/// missing values. Throws ArgumentError for a key no entity carries.
std::optional<Orientation> metadata_predict(const PairKey& pair, std::string_view key, bool higher_first,
                                            const EntityMetadata& metadata);

/// Scores metadata_predict over a pair table; abstentions are counted.
RuleEvaluation evaluate_metadata(const PairTable& pairs, std::string_view key, bool higher_first,
                                 const EntityMetadata& metadata);

/// A set of lowercase words, one per line.
StringSet load_word_list(const std::filesystem::path& path);
StringSet parse_word_list(std::string_view text);

struct MentionRatio {
  std::string entity;
  std::uint64_t list_instances = 0;
  std::uint64_t mentions = 0;
  double ratio = 0;
};

struct MentionRatioReport {
  std::vector<MentionRatio> rows;
  std::size_t excluded_english = 0;
  std::size_t excluded_floor = 0;
  std::optional<double> average;
};

/// list instances / mentions, or empty when the entity is below the mention floor
/// or any token of its name is an English word.
std::optional<double> mention_ratio(std::string_view entity, const ListCounts& lists, const WordCounts& mentions,
                                    const StringSet& english, std::uint64_t floor = 30);

/// mention_ratio over every mentioned entity, with exclusions itemized.
MentionRatioReport mention_ratios(const ListCounts& lists, const WordCounts& mentions, const StringSet& english,
                                  std::uint64_t floor = 30);

std::string mention_ratio_csv(const MentionRatioReport& r);

}  // namespace binomials
