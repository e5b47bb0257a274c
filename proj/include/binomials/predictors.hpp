#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binomials/counts.hpp"
#include "binomials/metrics.hpp"

namespace binomials {

struct Pronunciation {
  int phonemes = 0;
  int syllables = 0;
};

class PronouncingDictionary {
 public:
  /// `word phoneme_count syllable_count` per line; `#` comments. Counts must be >= 1.
  static PronouncingDictionary parse(std::string_view text);
  static PronouncingDictionary load(const std::filesystem::path& path);

  void add(std::string_view word, Pronunciation p);
  const Pronunciation* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  StringMap<Pronunciation> entries_;
};

class EmbeddingTable {
 public:
  /// Text format: `vocab_size dimension`, then `word v1 ... vd` per line.
  static EmbeddingTable parse(std::string_view text);
  static EmbeddingTable load(const std::filesystem::path& path);

  explicit EmbeddingTable(std::size_t dimension = 1);
  void add(std::string_view word, std::vector<double> vector);
  const std::vector<double>* find(std::string_view word) const;
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dimension_;
  StringMap<std::vector<double>> vectors_;
};

enum class Rule { alphabetical, length, phonemes, syllables, frequency };

inline constexpr std::array<Rule, 5> kAllRules = {Rule::alphabetical, Rule::length, Rule::phonemes,
                                                   Rule::syllables, Rule::frequency};

std::string_view to_string(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

/// Predicted order of a PairKey: forward = [first, second].
enum class Orientation { forward, backward };

inline Orientation flip(Orientation o) { return o == Orientation::forward ? Orientation::backward : Orientation::forward; }

struct PredictorResources {
  const PronouncingDictionary* dictionary = nullptr;
  const WordCounts* unigrams = nullptr;
  /// Frequency rule puts the more frequent word first; false flips it.
  bool frequency_higher_first = true;
};

/// Number of UTF-8 code points.
std::size_t code_point_length(std::string_view word);

/// Per-word feature value for a rule, or empty when the resource lacks the word.
/// Alphabetical maps to the first byte.
std::optional<double> rule_feature(std::string_view word, Rule rule, const PredictorResources& resources);

/// Smaller feature value first (frequency: higher first unless flipped); ties fall
/// back to alphabetical. Empty when a required resource or word is missing.
/// Throws ArgumentError when the rule's resource is not loaded.
std::optional<Orientation> rule_predict(const PairKey& pair, Rule rule, const PredictorResources& resources);

struct ScoredPair {
  PairKey pair;
  SliceCounts counts;
  Orientation prediction = Orientation::forward;
};

struct ScoreCard {
  double uo = 0;  // macro token accuracy
  double wo = 0;  // micro token accuracy
  double ut = 0;  // share of pair types predicted in their majority order
  double wt = 0;  // the same weighted by instance count
  std::size_t n_types = 0;
  std::uint64_t n_tokens = 0;
};

/// Throws EmptyInputError when empty and UndefinedValueError for a zero-count pair.
ScoreCard score(const std::vector<ScoredPair>& predictions);

struct RuleEvaluation {
  Rule rule = Rule::alphabetical;
  std::optional<ScoreCard> card;  // empty when every pair abstained
  std::size_t covered = 0;
  std::size_t total = 0;

  double coverage() const { return total == 0 ? 0.0 : static_cast<double>(covered) / total; }
};

RuleEvaluation evaluate_rule(const PairTable& pairs, Rule rule, const PredictorResources& resources);

/// Pairs with pooled asymmetry >= threshold.
PairTable frozen_subset(const PairTable& pairs, double threshold);

/// evaluate_rule over the frozen subset; throws EmptyInputError when it is empty.
std::vector<RuleEvaluation> frozen_only_eval(const PairTable& pairs, const std::vector<Rule>& rules,
                                             const PredictorResources& resources, double threshold = 0.97);

struct PairedResult {
  double accuracy = 0;
  std::size_t comparisons = 0;
  std::size_t k = 0;
  bool truncated = false;
};

/// Every (high, low) combination of the top-k and bottom-k pairs by asymmetry:
/// the pair with the larger absolute feature difference is predicted to be the
/// more asymmetric one; equal differences earn half credit. Comparisons with
/// equal true asymmetry or a missing feature are skipped. k is truncated to
/// half the pair count when too large.
PairedResult paired_asymmetry_predict(const PairTable& pairs, Rule rule, const PredictorResources& resources,
                                      std::size_t k);

inline constexpr int kMaxSyllables = 5;

struct SyllableMatrix {
  std::array<std::array<std::uint64_t, kMaxSyllables>, kMaxSyllables> counts{};
  std::array<std::array<std::optional<double>, kMaxSyllables>, kMaxSyllables> fraction{};
  std::uint64_t covered_instances = 0;
  std::uint64_t skipped_instances = 0;
};

/// Instance counts indexed by (syllables of first word, syllables of second word)
/// in observed order; words over kMaxSyllables or missing from the dictionary are skipped.
SyllableMatrix syllable_matrix(const PairTable& pairs, const PronouncingDictionary& dictionary);

/// Fraction matrix from counts: diagonal 1, cell [a][b] = c_ab / (c_ab + c_ba), empty when both are zero.
void fill_fractions(SyllableMatrix& m);

std::string syllable_matrix_csv(const SyllableMatrix& m);

}  // namespace binomials
