#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "binomials/counts.hpp"
#include "binomials/metrics.hpp"
#include "binomials/random.hpp"

namespace binomials {

/// Orderings observed for one unordered item set.
class MultinomialStats {
 public:
  explicit MultinomialStats(std::vector<std::string> item_set);

  /// Throws ArgumentError unless `ordering` is a permutation of the item set.
  void add(const std::vector<std::string>& ordering, std::uint64_t n = 1);

  const std::vector<std::string>& item_set() const { return items_; }  // sorted
  const std::map<std::vector<std::string>, std::uint64_t>& orderings() const { return orderings_; }
  std::uint64_t total() const;

 private:
  std::vector<std::string> items_;
  std::map<std::vector<std::string>, std::uint64_t> orderings_;
};

using MultinomialTable = std::map<std::vector<std::string>, MultinomialStats>;

/// Lists of exactly `length` items, pooled over slices, from the given methods.
MultinomialTable collect_multinomials(const ListCounts& lists, std::size_t length,
                                      const std::vector<Method>& methods);

/// Item sets seen at least `min_count` times.
MultinomialTable filter_multinomials(const MultinomialTable& table, std::uint64_t min_count);

/// Share of trinomials with at least `min_count` occurrences seen in exactly one
/// ordering. Throws EmptyInputError when none qualify.
double trinomial_frozen_fraction(const MultinomialTable& trinomials, std::uint64_t min_count = 30);

/// Draws `c` of the pair's instances without replacement; true when all share one orientation.
bool subsample_is_frozen(std::uint64_t forward, std::uint64_t backward, std::uint64_t c, Rng& rng);

/// Exact probability that a c-instance subsample without replacement is frozen.
double subsample_frozen_probability(std::uint64_t forward, std::uint64_t backward, std::uint64_t c);

/// The most common binomials, as many as there are trinomials, each subsampled
/// down to the instance count of the equally ranked trinomial; returns their
/// frozen fraction. Throws EmptyInputError when binomials are too few.
double subsampled_binomial_baseline(const PairTable& binomials, const MultinomialTable& trinomials,
                                    std::uint64_t seed);

/// Expected value of the baseline over all subsamples (exact).
double expected_binomial_baseline(const PairTable& binomials, const MultinomialTable& trinomials);

struct StabilityResult {
  std::size_t stable = 0;
  std::size_t total = 0;  // trinomials with exactly two orderings
  std::optional<double> fraction;
};

/// Among trinomials with exactly two orderings, the share whose orderings end in the same word.
StabilityResult last_position_stability(const MultinomialTable& trinomials);

struct CompatibilityRecord {
  PairKey pair;
  std::string dominant_first;  // a in the dominant order [a, b]
  std::string dominant_second;
  double asymmetry = 0;
  double compatibility = 0;
  std::uint64_t n_trinomial_occurrences = 0;
  bool tie = false;  // standalone counts equal; [first, second] taken as dominant
};

/// Fraction of the pair's trinomial-embedded occurrences (any positions) in its
/// dominant standalone order. Throws UndefinedValueError when never embedded or
/// when the pair has no standalone instances.
CompatibilityRecord compatibility(const PairKey& pair, const SliceCounts& standalone,
                                  const MultinomialTable& trinomials);

/// Records for every binomial embedded in at least one trinomial.
std::vector<CompatibilityRecord> compatibility_all(const PairTable& binomials, const MultinomialTable& trinomials);

struct CompatibilityReport {
  std::size_t asymmetry_greater = 0;
  std::size_t compatibility_greater = 0;
  std::size_t equal = 0;
  /// 20 bins of (asymmetry - compatibility) over [-1, 1].
  std::array<std::uint64_t, 20> histogram{};
};

/// Values within 1e-12 count as equal. Throws EmptyInputError on empty input.
CompatibilityReport compatibility_report(const std::vector<CompatibilityRecord>& records);

std::string trinomial_csv(const MultinomialTable& trinomials);
std::string compatibility_csv(const std::vector<CompatibilityRecord>& records);

}  // namespace binomials
