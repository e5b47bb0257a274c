#include "binomials/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "binomials/errors.hpp"
#include "binomials/random.hpp"

namespace binomials {

double estimate_phat(const PairStats& stats, const SeasonKey& slice) {
  const auto it = stats.counts.find(slice);
  if (it == stats.counts.end()) throw UndefinedValueError("slice has no instances");
  return ordinality(it->second);
}

PairTable non_frozen_pairs(const PairTable& pairs, double frozen_threshold) {
  PairTable out;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() == 0 || asymmetry(ordinality(t)) >= frozen_threshold) continue;
    out.emplace(key, stats);
  }
  return out;
}

SpreadReport summarize_spread(std::vector<double> values) {
  if (values.empty()) throw EmptyInputError("no pairs qualify for a spread estimate");
  SpreadReport r;
  r.values = values;
  r.n_lists = values.size();
  r.zero_spread = static_cast<std::size_t>(std::count(values.begin(), values.end(), 0.0));
  double sum = 0;
  for (const double v : values) sum += v;
  r.mean = sum / static_cast<double>(values.size());
  double ss = 0;
  for (const double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(values.size()));
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  r.median = values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
  return r;
}

namespace {

template <typename Groups>
std::vector<double> spreads(const PairTable& pairs, const NullModelOptions& options, Groups&& groups) {
  std::vector<double> values;
  for (const auto& [key, stats] : non_frozen_pairs(pairs, options.frozen_threshold)) {
    double lo = 1.0, hi = 0.0;
    std::size_t qualifying = 0;
    for (const auto& [label, c] : groups(stats)) {
      if (c.total() == 0 || c.total() < options.slice_floor) continue;
      const double o = ordinality(c);
      lo = std::min(lo, o);
      hi = std::max(hi, o);
      ++qualifying;
    }
    if (qualifying >= 2) values.push_back(hi - lo);
  }
  return values;
}

}  // namespace

SpreadReport spread_over_communities(const PairTable& pairs, const NullModelOptions& options) {
  return summarize_spread(spreads(pairs, options, [](const PairStats& s) { return s.by_community(); }));
}

SpreadReport spread_over_years(const PairTable& pairs, const NullModelOptions& options) {
  return summarize_spread(spreads(pairs, options, [](const PairStats& s) { return s.by_year(); }));
}

std::vector<CellSample> bootstrap_cells(const PairTable& pairs, const NullModelOptions& options) {
  std::vector<CellSample> out;
  for (const auto& [key, stats] : non_frozen_pairs(pairs, options.frozen_threshold)) {
    CellSample cs;
    cs.pooled = ordinality(stats.totals());
    for (const auto& [slice, c] : stats.counts) {
      if (!slice.dated() || c.total() == 0 || c.total() < options.slice_floor) continue;
      cs.n.push_back(c.total());
      cs.forward.push_back(c.forward);
    }
    if (cs.n.size() >= 2) out.push_back(std::move(cs));
  }
  return out;
}

double cell_std(const std::vector<std::uint64_t>& n, const std::vector<std::uint64_t>& forward) {
  const std::size_t k = n.size();
  double mean = 0;
  for (std::size_t i = 0; i < k; ++i) mean += static_cast<double>(forward[i]) / static_cast<double>(n[i]);
  mean /= static_cast<double>(k);
  double ss = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = static_cast<double>(forward[i]) / static_cast<double>(n[i]) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(k));
}

double sbar(const std::vector<CellSample>& cells) {
  if (cells.empty()) throw EmptyInputError("no pairs qualify for the bootstrap");
  double sum = 0;
  for (const auto& c : cells) sum += cell_std(c.n, c.forward);
  return sum / static_cast<double>(cells.size());
}

double resample_sbar(const std::vector<CellSample>& cells, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> drawn;
  double sum = 0;
  for (const auto& c : cells) {
    drawn.assign(c.n.size(), 0);
    for (std::size_t i = 0; i < c.n.size(); ++i) {
      for (std::uint64_t j = 0; j < c.n[i]; ++j) drawn[i] += bernoulli(rng, c.pooled) ? 1 : 0;
    }
    sum += cell_std(c.n, drawn);
  }
  return sum / static_cast<double>(cells.size());
}

std::size_t season_community_cells(const PairTable& pairs) {
  std::set<SeasonKey> cells;
  for (const auto& [key, stats] : pairs) {
    for (const auto& [slice, c] : stats.counts) {
      if (slice.dated()) cells.insert(slice);
    }
  }
  return cells.size();
}

std::size_t default_resamples(const PairTable& pairs) {
  return std::max<std::size_t>(season_community_cells(pairs), 100);
}

BootstrapReport bootstrap_sbar_serial(const std::vector<CellSample>& cells, std::size_t resamples,
                                      std::uint64_t seed) {
  if (resamples == 0) throw ArgumentError("bootstrap needs at least one resample");
  BootstrapReport r;
  r.seed = seed;
  r.n_pairs = cells.size();
  r.observed_sbar = sbar(cells);
  r.resampled_sbars.resize(resamples);
  for (std::size_t i = 0; i < resamples; ++i) r.resampled_sbars[i] = resample_sbar(cells, seed + i);
  return r;
}

BootstrapReport bootstrap_sbar(const std::vector<CellSample>& cells, std::size_t resamples, std::uint64_t seed) {
  if (resamples == 0) throw ArgumentError("bootstrap needs at least one resample");
  BootstrapReport r;
  r.seed = seed;
  r.n_pairs = cells.size();
  r.observed_sbar = sbar(cells);
  r.resampled_sbars.resize(resamples);
  const auto count = static_cast<std::ptrdiff_t>(resamples);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    r.resampled_sbars[i] = resample_sbar(cells, seed + static_cast<std::uint64_t>(i));
  }
  return r;
}

namespace {

nlohmann::ordered_json spread_json(const SpreadReport* s) {
  if (s == nullptr) return nullptr;
  nlohmann::ordered_json j;
  j["n_lists"] = s->n_lists;
  j["median"] = s->median;
  j["mean"] = s->mean;
  j["std"] = s->std;
  j["zero_spread"] = s->zero_spread;
  j["zero_spread_fraction"] = s->n_lists == 0 ? 0.0 : static_cast<double>(s->zero_spread) / s->n_lists;
  j["values"] = s->values;
  return j;
}

}  // namespace

std::string null_model_json(const SpreadReport* communities, const SpreadReport* years,
                            const BootstrapReport& bootstrap, const NullModelOptions& options) {
  nlohmann::ordered_json j;
  j["frozen_threshold"] = options.frozen_threshold;
  j["slice_floor"] = options.slice_floor;
  j["rng"] = kRngName;
  j["spread_over_communities"] = spread_json(communities);
  j["spread_over_years"] = spread_json(years);
  nlohmann::ordered_json b;
  b["seed"] = bootstrap.seed;
  b["n_pairs"] = bootstrap.n_pairs;
  b["resamples"] = bootstrap.resampled_sbars.size();
  b["observed_sbar"] = bootstrap.observed_sbar;
  b["resampled_sbars"] = bootstrap.resampled_sbars;
  j["bootstrap"] = b;
  return j.dump(2) + "\n";
}

}  // namespace binomials
