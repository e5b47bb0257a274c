#include "binomials/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

PairKey make_pair_key(std::string_view a, std::string_view b) {
  if (a == b) throw ArgumentError("pair words must differ: " + std::string(a));
  return a < b ? PairKey{std::string(a), std::string(b)} : PairKey{std::string(b), std::string(a)};
}

SliceCounts PairStats::totals() const {
  SliceCounts t;
  for (const auto& [slice, c] : counts) t += c;
  return t;
}

std::map<int, SliceCounts> PairStats::by_year() const {
  std::map<int, SliceCounts> out;
  for (const auto& [slice, c] : counts) {
    if (slice.dated()) out[slice.season_year] += c;
  }
  return out;
}

std::map<std::string, SliceCounts> PairStats::by_community() const {
  std::map<std::string, SliceCounts> out;
  for (const auto& [slice, c] : counts) out[slice.community] += c;
  return out;
}

void add_observation(PairTable& table, std::string_view w1, std::string_view w2, const SeasonKey& slice,
                     std::uint64_t n) {
  auto key = make_pair_key(w1, w2);
  const bool forward = key.first == w1;
  auto& c = table[std::move(key)].counts[slice];
  (forward ? c.forward : c.backward) += n;
}

PairTable collect_pairs(const ListCounts& counts, Method method) {
  PairTable table;
  for (const auto& [key, n] : counts.entries()) {
    if (key.method != method || key.items.size() != 2) continue;
    add_observation(table, key.items[0], key.items[1], key.slice, n);
  }
  return table;
}

double ordinality(std::uint64_t forward, std::uint64_t backward) {
  if (forward + backward == 0) throw UndefinedValueError("ordinality of a pair with zero count");
  return static_cast<double>(forward) / static_cast<double>(forward + backward);
}

double ordinality(const SliceCounts& counts) { return ordinality(counts.forward, counts.backward); }

double ordinality(const PairStats& stats, const SliceFilter& filter) {
  SliceCounts t;
  for (const auto& [slice, c] : stats.counts) {
    if (!filter || filter(slice)) t += c;
  }
  return ordinality(t);
}

double asymmetry(double o) { return 2.0 * std::abs(o - 0.5); }

double movement_of(const std::vector<double>& yearly) {
  if (yearly.empty()) throw UndefinedValueError("movement needs at least one qualifying year");
  const auto [lo, hi] = std::minmax_element(yearly.begin(), yearly.end());
  return *hi - *lo;
}

double agreement_of(const std::vector<double>& per_community) {
  if (per_community.empty()) throw UndefinedValueError("agreement needs at least one qualifying community");
  const auto [lo, hi] = std::minmax_element(per_community.begin(), per_community.end());
  return 1.0 - (*hi - *lo);
}

std::vector<double> yearly_ordinalities(const PairStats& stats, std::uint64_t floor) {
  std::vector<double> out;
  for (const auto& [year, c] : stats.by_year()) {
    if (c.total() > 0 && c.total() >= floor) out.push_back(ordinality(c));
  }
  return out;
}

std::vector<double> community_ordinalities(const PairStats& stats, std::uint64_t floor) {
  std::vector<double> out;
  for (const auto& [community, c] : stats.by_community()) {
    if (c.total() > 0 && c.total() >= floor) out.push_back(ordinality(c));
  }
  return out;
}

double movement(const PairStats& stats, std::uint64_t floor) { return movement_of(yearly_ordinalities(stats, floor)); }

double agreement(const PairStats& stats, std::uint64_t floor) {
  return agreement_of(community_ordinalities(stats, floor));
}

std::map<PairKey, DimensionVector> dimension_cube(const PairTable& pairs, const CubeOptions& options) {
  std::vector<std::string> communities = options.communities;
  std::vector<int> years = options.years;
  if (communities.empty() || years.empty()) {
    std::set<std::string> cs;
    std::set<int> ys;
    for (const auto& [key, stats] : pairs) {
      for (const auto& [slice, c] : stats.counts) {
        cs.insert(slice.community);
        if (slice.dated()) ys.insert(slice.season_year);
      }
    }
    if (communities.empty()) communities.assign(cs.begin(), cs.end());
    if (years.empty()) years.assign(ys.begin(), ys.end());
  }
  std::map<PairKey, DimensionVector> out;
  if (communities.empty() || years.empty()) return out;
  const auto floor = options.min_yearly_count;
  for (const auto& [key, stats] : pairs) {
    bool ok = true;
    SliceCounts all;
    std::map<int, SliceCounts> per_year;
    std::map<std::string, SliceCounts> per_community;
    for (const auto& community : communities) {
      for (const int year : years) {
        const auto it = stats.counts.find(SeasonKey{community, year});
        const SliceCounts c = it == stats.counts.end() ? SliceCounts{} : it->second;
        if (c.total() == 0 || c.total() < floor) {
          ok = false;
          break;
        }
        all += c;
        per_year[year] += c;
        per_community[community] += c;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    std::vector<double> yo, co;
    for (const auto& [y, c] : per_year) yo.push_back(ordinality(c));
    for (const auto& [cm, c] : per_community) co.push_back(ordinality(c));
    out.emplace(key, DimensionVector{asymmetry(ordinality(all)), movement_of(yo), agreement_of(co)});
  }
  return out;
}

FrozennessSummary frozenness_summary(const PairTable& pairs, double threshold) {
  if (!(threshold > 0.5 && threshold <= 1.0)) throw ArgumentError("frozen threshold must lie in (0.5, 1]");
  FrozennessSummary s;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() == 0) continue;
    ++s.total_pairs;
    if (asymmetry(ordinality(t)) >= threshold) ++s.frozen_pairs;
  }
  s.frozen_fraction = s.total_pairs == 0 ? 0.0 : static_cast<double>(s.frozen_pairs) / s.total_pairs;
  return s;
}

std::vector<MetricsRow> metrics_rows(const PairTable& pairs, std::uint64_t slice_floor) {
  std::vector<MetricsRow> rows;
  for (const auto& [key, stats] : pairs) {
    MetricsRow r;
    r.pair = key;
    r.totals = stats.totals();
    if (r.totals.total() == 0) continue;
    r.ordinality = ordinality(r.totals);
    r.asymmetry = asymmetry(r.ordinality);
    const auto yo = yearly_ordinalities(stats, slice_floor);
    const auto co = community_ordinalities(stats, slice_floor);
    if (!yo.empty()) r.movement = movement_of(yo);
    if (!co.empty()) r.agreement = agreement_of(co);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "pair,first,second,n_forward,n_backward,ordinality,asymmetry,movement,agreement\n";
  for (const auto& r : rows) {
    out += csv_field(r.pair.first + "|" + r.pair.second) + ',' + csv_field(r.pair.first) + ',' +
           csv_field(r.pair.second) + ',' + std::to_string(r.totals.forward) + ',' +
           std::to_string(r.totals.backward) + ',' + format_real(r.ordinality) + ',' + format_real(r.asymmetry) +
           ',' + format_optional(r.movement) + ',' + format_optional(r.agreement) + '\n';
  }
  return out;
}

std::vector<std::uint64_t> unit_histogram(const std::vector<double>& values, std::size_t bins) {
  if (bins == 0) throw ArgumentError("histogram needs at least one bin");
  std::vector<std::uint64_t> h(bins, 0);
  for (const double v : values) {
    if (std::isnan(v)) continue;
    auto b = static_cast<std::size_t>(std::clamp(v, 0.0, 1.0) * static_cast<double>(bins));
    h[std::min(b, bins - 1)] += 1;
  }
  return h;
}

}  // namespace binomials
