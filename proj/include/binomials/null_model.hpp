#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binomials/metrics.hpp"

namespace binomials {

struct NullModelOptions {
  /// Pairs whose pooled asymmetry reaches this value are omitted before any estimate.
  double frozen_threshold = 0.97;
  /// A slice contributes only with at least this many instances.
  std::uint64_t slice_floor = 30;
};

/// Ordinality of one slice. Throws UndefinedValueError for an empty slice.
double estimate_phat(const PairStats& stats, const SeasonKey& slice);

/// Pairs retained for estimation: non-empty and not frozen.
PairTable non_frozen_pairs(const PairTable& pairs, double frozen_threshold);

struct SpreadReport {
  double median = 0;
  double mean = 0;
  double std = 0;  // population
  std::size_t n_lists = 0;
  std::size_t zero_spread = 0;
  std::vector<double> values;  // per pair, in PairKey order
};

/// Summary statistics of a sample; throws EmptyInputError when empty.
SpreadReport summarize_spread(std::vector<double> values);

/// Per-pair max - min of community ordinalities over pairs with >= 2 qualifying communities.
SpreadReport spread_over_communities(const PairTable& pairs, const NullModelOptions& options = {});
/// Same over dated years.
SpreadReport spread_over_years(const PairTable& pairs, const NullModelOptions& options = {});

/// The (community, year) cells of one pair used by the bootstrap: n instances, k forward.
struct CellSample {
  std::vector<std::uint64_t> n;
  std::vector<std::uint64_t> forward;
  double pooled = 0;  // p_l over every slice of the pair
};

/// Pairs with >= 2 qualifying dated (community, year) cells, after frozen exclusion.
std::vector<CellSample> bootstrap_cells(const PairTable& pairs, const NullModelOptions& options = {});

/// Population standard deviation of the cell ordinalities.
double cell_std(const std::vector<std::uint64_t>& n, const std::vector<std::uint64_t>& forward);

/// Mean of cell_std over pairs.
double sbar(const std::vector<CellSample>& cells);

/// s-bar of one resample: every instance redrawn as Bernoulli(p_l) from a
/// generator seeded with `seed`.
double resample_sbar(const std::vector<CellSample>& cells, std::uint64_t seed);

struct BootstrapReport {
  double observed_sbar = 0;
  std::vector<double> resampled_sbars;
  std::uint64_t seed = 0;
  std::size_t n_pairs = 0;

  bool operator==(const BootstrapReport&) const = default;
};

/// Number of distinct dated (community, season) cells in the table.
std::size_t season_community_cells(const PairTable& pairs);

/// Default resample count: max(cells, 100).
std::size_t default_resamples(const PairTable& pairs);

/// Resample r uses seed + r, so serial and parallel runs agree exactly.
BootstrapReport bootstrap_sbar_serial(const std::vector<CellSample>& cells, std::size_t resamples, std::uint64_t seed);
BootstrapReport bootstrap_sbar(const std::vector<CellSample>& cells, std::size_t resamples, std::uint64_t seed);

/// Full JSON report: spreads, bootstrap arrays, metadata.
std::string null_model_json(const SpreadReport* communities, const SpreadReport* years,
                            const BootstrapReport& bootstrap, const NullModelOptions& options);

}  // namespace binomials
