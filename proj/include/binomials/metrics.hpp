#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binomials/corpus.hpp"
#include "binomials/counts.hpp"

namespace binomials {

/// Unordered pair stored in reference order: first < second byte-wise.
struct PairKey {
  std::string first;
  std::string second;

  auto operator<=>(const PairKey&) const = default;
};

/// Orders two distinct words into a PairKey. Throws ArgumentError when equal.
PairKey make_pair_key(std::string_view a, std::string_view b);

struct SliceCounts {
  std::uint64_t forward = 0;   // [first, second]
  std::uint64_t backward = 0;  // [second, first]

  std::uint64_t total() const { return forward + backward; }
  SliceCounts& operator+=(const SliceCounts& o) {
    forward += o.forward;
    backward += o.backward;
    return *this;
  }
  bool operator==(const SliceCounts&) const = default;
};

struct PairStats {
  std::map<SeasonKey, SliceCounts> counts;

  SliceCounts totals() const;
  /// Counts pooled over communities, per dated season year.
  std::map<int, SliceCounts> by_year() const;
  /// Counts pooled over seasons (undated included), per community.
  std::map<std::string, SliceCounts> by_community() const;
  bool operator==(const PairStats&) const = default;
};

using PairTable = std::map<PairKey, PairStats>;

/// Collects length-2 lists of one method into per-pair slice counts.
PairTable collect_pairs(const ListCounts& counts, Method method);

/// Builds a table from ordered observations (tests and fixtures).
void add_observation(PairTable& table, std::string_view w1, std::string_view w2, const SeasonKey& slice,
                     std::uint64_t n = 1);

using SliceFilter = std::function<bool(const SeasonKey&)>;

/// n_forward / (n_forward + n_backward). Throws UndefinedValueError when both are zero.
double ordinality(std::uint64_t forward, std::uint64_t backward);
double ordinality(const SliceCounts& counts);
/// Ordinality over the slices accepted by `filter` (all slices when empty).
double ordinality(const PairStats& stats, const SliceFilter& filter = {});

/// 2 * |o - 0.5|.
double asymmetry(double o);

/// max - min of the given ordinalities. Throws UndefinedValueError when empty.
double movement_of(const std::vector<double>& yearly);
/// 1 - (max - min) of the given ordinalities. Throws UndefinedValueError when empty.
double agreement_of(const std::vector<double>& per_community);

/// Ordinalities of the dated years whose pooled count reaches `floor`.
std::vector<double> yearly_ordinalities(const PairStats& stats, std::uint64_t floor);
/// Ordinalities of the communities whose pooled count reaches `floor`.
std::vector<double> community_ordinalities(const PairStats& stats, std::uint64_t floor);

/// Movement over years with at least `floor` instances.
double movement(const PairStats& stats, std::uint64_t floor = 30);
/// Agreement over communities with at least `floor` instances.
double agreement(const PairStats& stats, std::uint64_t floor = 30);

struct DimensionVector {
  double asymmetry = 0;
  double movement = 0;
  double agreement = 0;

  bool operator==(const DimensionVector&) const = default;
};

struct CubeOptions {
  std::uint64_t min_yearly_count = 30;
  /// Required communities and years; when empty, every community/dated year present in the table.
  std::vector<std::string> communities;
  std::vector<int> years;
};

/// Pairs with at least `min_yearly_count` instances in every required
/// (community, year) cell, mapped to (asymmetry, movement, agreement).
std::map<PairKey, DimensionVector> dimension_cube(const PairTable& pairs, const CubeOptions& options = {});

struct FrozennessSummary {
  std::size_t total_pairs = 0;
  std::size_t frozen_pairs = 0;
  double frozen_fraction = 0;
};

/// Share of pairs with overall asymmetry >= threshold. Threshold must lie in (0.5, 1].
FrozennessSummary frozenness_summary(const PairTable& pairs, double threshold = 0.97);

/// One row of the metrics table; undefined metrics are empty.
struct MetricsRow {
  PairKey pair;
  SliceCounts totals;
  double ordinality = 0;
  double asymmetry = 0;
  std::optional<double> movement;
  std::optional<double> agreement;
};

std::vector<MetricsRow> metrics_rows(const PairTable& pairs, std::uint64_t slice_floor = 30);

/// CSV: pair,first,second,n_forward,n_backward,ordinality,asymmetry,movement,agreement
std::string metrics_csv(const std::vector<MetricsRow>& rows);

/// Histogram of values in [0, 1] with `bins` equal-width bins; 1.0 falls in the last bin.
std::vector<std::uint64_t> unit_histogram(const std::vector<double>& values, std::size_t bins);

}  // namespace binomials
