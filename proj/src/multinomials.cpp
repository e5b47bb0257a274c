#include "binomials/multinomials.hpp"

#include <algorithm>
#include <cmath>

#include "binomials/errors.hpp"
#include "binomials/random.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

MultinomialStats::MultinomialStats(std::vector<std::string> item_set) : items_(std::move(item_set)) {
  std::sort(items_.begin(), items_.end());
  if (items_.size() < 2 || std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw ArgumentError("item set needs at least two distinct items");
  }
}

void MultinomialStats::add(const std::vector<std::string>& ordering, std::uint64_t n) {
  auto sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != items_) throw ArgumentError("ordering is not a permutation of the item set");
  orderings_[ordering] += n;
}

std::uint64_t MultinomialStats::total() const {
  std::uint64_t t = 0;
  for (const auto& [o, n] : orderings_) t += n;
  return t;
}

MultinomialTable collect_multinomials(const ListCounts& lists, std::size_t length, const std::vector<Method>& methods) {
  MultinomialTable table;
  for (const auto& [key, n] : lists.entries()) {
    if (key.items.size() != length || std::find(methods.begin(), methods.end(), key.method) == methods.end()) {
      continue;
    }
    auto set = key.items;
    std::sort(set.begin(), set.end());
    auto it = table.find(set);
    if (it == table.end()) it = table.emplace(set, MultinomialStats(set)).first;
    it->second.add(key.items, n);
  }
  return table;
}

MultinomialTable filter_multinomials(const MultinomialTable& table, std::uint64_t min_count) {
  MultinomialTable out;
  for (const auto& [set, stats] : table) {
    if (stats.total() >= min_count) out.emplace(set, stats);
  }
  return out;
}

double trinomial_frozen_fraction(const MultinomialTable& trinomials, std::uint64_t min_count) {
  std::size_t total = 0, frozen = 0;
  for (const auto& [set, stats] : trinomials) {
    if (set.size() != 3 || stats.total() == 0 || stats.total() < min_count) continue;
    ++total;
    if (stats.orderings().size() == 1) ++frozen;
  }
  if (total == 0) throw EmptyInputError("no trinomials reach the minimum count");
  return static_cast<double>(frozen) / static_cast<double>(total);
}

bool subsample_is_frozen(std::uint64_t forward, std::uint64_t backward, std::uint64_t c, Rng& rng) {
  c = std::min(c, forward + backward);
  std::uint64_t got_forward = 0, got_backward = 0;
  for (std::uint64_t i = 0; i < c; ++i) {
    const double p = static_cast<double>(forward) / static_cast<double>(forward + backward);
    if (uniform01(rng) < p) {
      --forward;
      ++got_forward;
    } else {
      --backward;
      ++got_backward;
    }
  }
  return got_forward == 0 || got_backward == 0;
}

double subsample_frozen_probability(std::uint64_t forward, std::uint64_t backward, std::uint64_t c) {
  const std::uint64_t n = forward + backward;
  c = std::min(c, n);
  // C(k, c) / C(n, c) = prod (k - i) / (n - i)
  const auto ratio = [&](std::uint64_t k) {
    if (k < c) return 0.0;
    double r = 1.0;
    for (std::uint64_t i = 0; i < c; ++i) r *= static_cast<double>(k - i) / static_cast<double>(n - i);
    return r;
  };
  if (c == 0) return 1.0;
  return ratio(forward) + ratio(backward);
}

namespace {

struct RankedPair {
  std::uint64_t forward;
  std::uint64_t backward;
};

// Binomials and trinomial counts paired rank for rank.
std::pair<std::vector<RankedPair>, std::vector<std::uint64_t>> ranked(const PairTable& binomials,
                                                                      const MultinomialTable& trinomials) {
  std::vector<std::uint64_t> tri;
  for (const auto& [set, stats] : trinomials) {
    if (stats.total() > 0) tri.push_back(stats.total());
  }
  if (tri.empty()) throw EmptyInputError("no trinomials to match");
  std::stable_sort(tri.begin(), tri.end(), std::greater<>());
  std::vector<RankedPair> bi;
  for (const auto& [key, stats] : binomials) {
    const auto t = stats.totals();
    if (t.total() > 0) bi.push_back(RankedPair{t.forward, t.backward});
  }
  if (bi.size() < tri.size()) throw EmptyInputError("fewer binomials than trinomials");
  std::stable_sort(bi.begin(), bi.end(), [](const RankedPair& a, const RankedPair& b) {
    return a.forward + a.backward > b.forward + b.backward;
  });
  bi.resize(tri.size());
  return {bi, tri};
}

}  // namespace

double subsampled_binomial_baseline(const PairTable& binomials, const MultinomialTable& trinomials,
                                    std::uint64_t seed) {
  const auto [bi, tri] = ranked(binomials, trinomials);
  Rng rng(seed);
  std::size_t frozen = 0;
  for (std::size_t i = 0; i < tri.size(); ++i) {
    if (subsample_is_frozen(bi[i].forward, bi[i].backward, tri[i], rng)) ++frozen;
  }
  return static_cast<double>(frozen) / static_cast<double>(tri.size());
}

double expected_binomial_baseline(const PairTable& binomials, const MultinomialTable& trinomials) {
  const auto [bi, tri] = ranked(binomials, trinomials);
  double sum = 0;
  for (std::size_t i = 0; i < tri.size(); ++i) sum += subsample_frozen_probability(bi[i].forward, bi[i].backward, tri[i]);
  return sum / static_cast<double>(tri.size());
}

StabilityResult last_position_stability(const MultinomialTable& trinomials) {
  StabilityResult r;
  for (const auto& [set, stats] : trinomials) {
    if (set.size() != 3 || stats.orderings().size() != 2) continue;
    ++r.total;
    const auto& a = stats.orderings().begin()->first;
    const auto& b = std::next(stats.orderings().begin())->first;
    if (a.back() == b.back()) ++r.stable;
  }
  if (r.total > 0) r.fraction = static_cast<double>(r.stable) / static_cast<double>(r.total);
  return r;
}

namespace {

CompatibilityRecord make_record(const PairKey& pair, const SliceCounts& standalone, std::uint64_t first_before,
                                std::uint64_t embedded) {
  if (standalone.total() == 0) throw UndefinedValueError("pair has no standalone instances");
  if (embedded == 0) throw UndefinedValueError("pair never occurs inside a trinomial");
  CompatibilityRecord r;
  r.pair = pair;
  r.tie = standalone.forward == standalone.backward;
  r.asymmetry = asymmetry(ordinality(standalone));
  r.n_trinomial_occurrences = embedded;
  if (standalone.forward >= standalone.backward) {
    r.dominant_first = pair.first;
    r.dominant_second = pair.second;
    r.compatibility = static_cast<double>(first_before) / static_cast<double>(embedded);
  } else {
    r.dominant_first = pair.second;
    r.dominant_second = pair.first;
    r.compatibility = static_cast<double>(embedded - first_before) / static_cast<double>(embedded);
  }
  return r;
}

}  // namespace

CompatibilityRecord compatibility(const PairKey& pair, const SliceCounts& standalone,
                                  const MultinomialTable& trinomials) {
  std::uint64_t first_before = 0, embedded = 0;
  for (const auto& [set, stats] : trinomials) {
    if (set.size() != 3) continue;
    if (!std::binary_search(set.begin(), set.end(), pair.first) ||
        !std::binary_search(set.begin(), set.end(), pair.second)) {
      continue;
    }
    for (const auto& [ordering, n] : stats.orderings()) {
      const auto pa = std::find(ordering.begin(), ordering.end(), pair.first);
      const auto pb = std::find(ordering.begin(), ordering.end(), pair.second);
      embedded += n;
      if (pa < pb) first_before += n;
    }
  }
  return make_record(pair, standalone, first_before, embedded);
}

std::vector<CompatibilityRecord> compatibility_all(const PairTable& binomials, const MultinomialTable& trinomials) {
  std::map<PairKey, std::pair<std::uint64_t, std::uint64_t>> embedded;  // (first before second, total)
  for (const auto& [set, stats] : trinomials) {
    if (set.size() != 3) continue;
    for (const auto& [ordering, n] : stats.orderings()) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          // ordering[i] precedes ordering[j]
          auto key = make_pair_key(ordering[i], ordering[j]);
          const bool forward = key.first == ordering[i];
          auto& e = embedded[std::move(key)];
          e.second += n;
          if (forward) e.first += n;
        }
      }
    }
  }
  std::vector<CompatibilityRecord> out;
  for (const auto& [key, e] : embedded) {
    const auto it = binomials.find(key);
    if (it == binomials.end()) continue;
    const auto t = it->second.totals();
    if (t.total() == 0) continue;
    out.push_back(make_record(key, t, e.first, e.second));
  }
  return out;
}

CompatibilityReport compatibility_report(const std::vector<CompatibilityRecord>& records) {
  if (records.empty()) throw EmptyInputError("no compatibility records");
  CompatibilityReport r;
  for (const auto& rec : records) {
    const double d = rec.asymmetry - rec.compatibility;
    if (std::abs(d) <= 1e-12) ++r.equal;
    else if (d > 0) ++r.asymmetry_greater;
    else ++r.compatibility_greater;
    const auto bin = static_cast<std::size_t>(std::clamp((d + 1.0) / 2.0, 0.0, 1.0) * 20.0);
    r.histogram[std::min<std::size_t>(bin, 19)] += 1;
  }
  return r;
}

std::string trinomial_csv(const MultinomialTable& trinomials) {
  std::string out = "item_set,ordering,count\n";
  for (const auto& [set, stats] : trinomials) {
    std::string s;
    for (const auto& w : set) s += (s.empty() ? "" : "|") + w;
    for (const auto& [ordering, n] : stats.orderings()) {
      std::string o;
      for (const auto& w : ordering) o += (o.empty() ? "" : "|") + w;
      out += csv_field(s) + ',' + csv_field(o) + ',' + std::to_string(n) + '\n';
    }
  }
  return out;
}

std::string compatibility_csv(const std::vector<CompatibilityRecord>& records) {
  std::string out = "first,second,dominant_first,dominant_second,asymmetry,compatibility,n_trinomial,tie\n";
  for (const auto& r : records) {
    out += csv_field(r.pair.first) + ',' + csv_field(r.pair.second) + ',' + csv_field(r.dominant_first) + ',' +
           csv_field(r.dominant_second) + ',' + format_real(r.asymmetry) + ',' + format_real(r.compatibility) + ',' +
           std::to_string(r.n_trinomial_occurrences) + ',' + (r.tie ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace binomials
