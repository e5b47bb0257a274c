#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "binomials/errors.hpp"
#include "binomials/metrics.hpp"

namespace {

using namespace binomials;

PairStats stats_of(std::initializer_list<std::pair<SeasonKey, SliceCounts>> cells) {
  PairStats s;
  for (const auto& [k, c] : cells) s.counts[k] += c;
  return s;
}

TEST(Ordinality, Examples) {
  EXPECT_NEAR(ordinality(40, 10), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(ordinality(7, 7), 0.5);
  EXPECT_THROW(ordinality(0, 0), UndefinedValueError);
}

TEST(Ordinality, FilteredSlices) {
  const auto s = stats_of({{{"nba", 2016}, {30, 10}}, {{"nfl", 2016}, {0, 40}}});
  EXPECT_DOUBLE_EQ(ordinality(s), 30.0 / 80.0);
  EXPECT_DOUBLE_EQ(ordinality(s, [](const SeasonKey& k) { return k.community == "nba"; }), 0.75);
  EXPECT_THROW(ordinality(s, [](const SeasonKey&) { return false; }), UndefinedValueError);
}

TEST(Ordinality, ReversedReferenceOrderComplements) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i) {
    const auto f = gen() % 1000, b = gen() % 1000 + 1;
    EXPECT_NEAR(ordinality(b, f), 1.0 - ordinality(f, b), 1e-12);
  }
}

TEST(Asymmetry, Examples) {
  EXPECT_EQ(asymmetry(0.5), 0.0);
  EXPECT_EQ(asymmetry(1.0), 1.0);
  EXPECT_NEAR(asymmetry(0.8), 0.6, 1e-12);
}

TEST(Asymmetry, FlipInvariantAndInUnitInterval) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double o = u(gen);
    const double a = asymmetry(o);
    EXPECT_NEAR(a, asymmetry(1.0 - o), 1e-12);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Movement, Examples) {
  EXPECT_NEAR(movement_of({0.07, 0.36}), 0.29, 1e-12);
  EXPECT_EQ(movement_of({0.4}), 0.0);
  EXPECT_THROW(movement_of({}), UndefinedValueError);
}

TEST(Agreement, Examples) {
  EXPECT_NEAR(agreement_of({0.921, 0.204}), 0.283, 1e-12);
  EXPECT_EQ(agreement_of({0.3}), 1.0);
  EXPECT_THROW(agreement_of({}), UndefinedValueError);
}

TEST(Movement, ThreeYearFixtureByHand) {
  // Yearly pooled counts: 2015 30/20 (0.6), 2016 10/40 (0.2), 2017 45/15 (0.75, from two communities).
  const auto s = stats_of({{{"a", 2015}, {30, 20}},
                           {{"a", 2016}, {10, 40}},
                           {{"a", 2017}, {20, 10}},
                           {{"b", 2017}, {25, 5}},
                           {{"b", kUndatedSeason}, {100, 0}}});
  EXPECT_NEAR(movement(s, 30), 0.75 - 0.2, 1e-12);
  // A floor of 51 leaves only 2017 (60 instances).
  EXPECT_EQ(movement(s, 51), 0.0);
  EXPECT_THROW(movement(s, 61), UndefinedValueError);
}

TEST(Agreement, ThreeCommunityFixtureByHand) {
  // Community pooled ordinalities: a 0.9 (90/100), b 0.5 (20/40), c 0.25 (10/40, two seasons).
  const auto s = stats_of({{{"a", 2016}, {90, 10}},
                           {{"b", 2016}, {20, 20}},
                           {{"c", 2015}, {5, 15}},
                           {{"c", kUndatedSeason}, {5, 15}},
                           {{"d", 2016}, {1, 0}}});
  EXPECT_NEAR(agreement(s, 30), 1.0 - (0.9 - 0.25), 1e-12);
  EXPECT_NEAR(agreement(s, 1), 1.0 - (1.0 - 0.25), 1e-12);
}

TEST(MovementAgreement, InvariantToRelabeling) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    PairStats s, relabeled;
    std::vector<int> years = {2010, 2011, 2012, 2013, 2014};
    std::vector<std::string> communities = {"a", "b", "c"};
    std::vector<int> perm_years = years;
    std::vector<std::string> perm_comms = communities;
    std::shuffle(perm_years.begin(), perm_years.end(), gen);
    std::shuffle(perm_comms.begin(), perm_comms.end(), gen);
    for (std::size_t c = 0; c < communities.size(); ++c) {
      for (std::size_t y = 0; y < years.size(); ++y) {
        const SliceCounts cell{gen() % 50, gen() % 50};
        s.counts[{communities[c], years[y]}] = cell;
        relabeled.counts[{perm_comms[c], perm_years[y]}] = cell;
      }
    }
    ASSERT_NEAR(movement(s, 1), movement(relabeled, 1), 1e-12);
    ASSERT_NEAR(agreement(s, 1), agreement(relabeled, 1), 1e-12);
  }
}

TEST(Pairs, KeyOrderAndCollection) {
  EXPECT_EQ(make_pair_key("pepper", "salt"), (PairKey{"pepper", "salt"}));
  EXPECT_EQ(make_pair_key("salt", "pepper"), (PairKey{"pepper", "salt"}));
  EXPECT_THROW(make_pair_key("a", "a"), ArgumentError);

  ListCounts lists;
  const std::vector<std::string_view> sp = {"salt", "pepper"}, ps = {"pepper", "salt"}, abc = {"a", "b", "c"};
  lists.add(Method::all_words, "food", 2016, sp, 40);
  lists.add(Method::all_words, "food", 2016, ps, 10);
  lists.add(Method::names_only, "food", 2016, sp, 99);
  lists.add(Method::all_words_extended, "food", 2016, abc, 5);
  const auto table = collect_pairs(lists, Method::all_words);
  ASSERT_EQ(table.size(), 1u);
  const auto& stats = table.at(PairKey{"pepper", "salt"});
  EXPECT_EQ(stats.totals(), (SliceCounts{10, 40}));
  EXPECT_NEAR(ordinality(stats), 0.2, 1e-12);
}

PairTable cube_fixture() {
  // Two communities x two years; pooled ordinality 0.7, yearly 0.6 and 0.8, community 0.95 and 0.05.
  PairTable t;
  auto& s = t[PairKey{"10", "20"}];
  s.counts[{"a", 2016}] = {209, 11};
  s.counts[{"a", 2017}] = {285, 15};
  s.counts[{"b", 2016}] = {7, 133};
  s.counts[{"b", 2017}] = {3, 57};
  return t;
}

TEST(Cube, PaperTripleFixture) {
  const auto cube = dimension_cube(cube_fixture());
  ASSERT_EQ(cube.size(), 1u);
  const auto& v = cube.begin()->second;
  EXPECT_NEAR(v.asymmetry, 0.4, 0.05);
  EXPECT_NEAR(v.movement, 0.2, 0.05);
  EXPECT_NEAR(v.agreement, 0.1, 0.05);
  // the fixture hits the triple exactly
  EXPECT_NEAR(v.asymmetry, 0.4, 1e-12);
  EXPECT_NEAR(v.movement, 0.2, 1e-12);
  EXPECT_NEAR(v.agreement, 0.1, 1e-12);
}

TEST(Cube, FrozenCorner) {
  PairTable t;
  for (const auto* c : {"a", "b", "c"}) {
    for (int y = 2015; y <= 2017; ++y) t[PairKey{"bread", "butter"}].counts[{c, y}] = {50, 0};
  }
  const auto cube = dimension_cube(t);
  ASSERT_EQ(cube.size(), 1u);
  EXPECT_EQ(cube.begin()->second, (DimensionVector{1.0, 0.0, 1.0}));
}

TEST(Cube, EveryCellMustReachTheFloor) {
  auto t = cube_fixture();
  t[PairKey{"10", "20"}].counts[{"b", 2017}] = {3, 26};  // 29 instances
  EXPECT_TRUE(dimension_cube(t).empty());
  CubeOptions only_a;
  only_a.communities = {"a"};
  only_a.years = {2016, 2017};
  EXPECT_EQ(dimension_cube(t, only_a).size(), 1u);
}

TEST(Cube, TwentyPairsMatchInstanceReplay) {
  std::mt19937_64 gen(4);
  const std::vector<std::string> communities = {"x", "y", "z"};
  const std::vector<int> years = {2015, 2016};
  PairTable table;
  // Instance list per pair: (community, year, forward?)
  std::map<PairKey, std::vector<std::tuple<std::string, int, bool>>> instances;
  for (int p = 0; p < 20; ++p) {
    const PairKey key{"w" + std::to_string(p), "x" + std::to_string(p)};
    const double bias = static_cast<double>(gen() % 101) / 100.0;
    for (const auto& c : communities) {
      for (const int y : years) {
        const int n = 30 + static_cast<int>(gen() % 40);
        for (int i = 0; i < n; ++i) {
          const bool fwd = static_cast<double>(gen() % 1000) / 1000.0 < bias;
          instances[key].emplace_back(c, y, fwd);
          add_observation(table, fwd ? key.first : key.second, fwd ? key.second : key.first, {c, y});
        }
      }
    }
  }
  const auto cube = dimension_cube(table);
  ASSERT_EQ(cube.size(), 20u);
  for (const auto& [key, inst] : instances) {
    // replay one instance at a time
    double all_f = 0, all_n = 0;
    std::map<int, std::pair<double, double>> by_year;
    std::map<std::string, std::pair<double, double>> by_comm;
    for (const auto& [c, y, fwd] : inst) {
      all_f += fwd;
      all_n += 1;
      by_year[y].first += fwd;
      by_year[y].second += 1;
      by_comm[c].first += fwd;
      by_comm[c].second += 1;
    }
    const double o = all_f / all_n;
    double ymin = 1, ymax = 0, cmin = 1, cmax = 0;
    for (const auto& [y, fn] : by_year) {
      ymin = std::min(ymin, fn.first / fn.second);
      ymax = std::max(ymax, fn.first / fn.second);
    }
    for (const auto& [c, fn] : by_comm) {
      cmin = std::min(cmin, fn.first / fn.second);
      cmax = std::max(cmax, fn.first / fn.second);
    }
    const auto& v = cube.at(key);
    EXPECT_NEAR(v.asymmetry, 2 * std::abs(o - 0.5), 1e-12);
    EXPECT_NEAR(v.movement, ymax - ymin, 1e-12);
    EXPECT_NEAR(v.agreement, 1 - (cmax - cmin), 1e-12);
    for (const double d : {v.asymmetry, v.movement, v.agreement}) {
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
    }
  }
}

TEST(Cube, RelabelingPairLeavesVectorUnchanged) {
  const auto t = cube_fixture();
  PairTable swapped;
  for (const auto& [slice, c] : t.begin()->second.counts) swapped[PairKey{"10", "20"}].counts[slice] = {c.backward, c.forward};
  EXPECT_NEAR(dimension_cube(t).begin()->second.asymmetry, dimension_cube(swapped).begin()->second.asymmetry, 1e-12);
  EXPECT_NEAR(dimension_cube(t).begin()->second.movement, dimension_cube(swapped).begin()->second.movement, 1e-12);
  EXPECT_NEAR(dimension_cube(t).begin()->second.agreement, dimension_cube(swapped).begin()->second.agreement, 1e-12);
}

TEST(Frozenness, Examples) {
  PairTable even, frozen;
  for (int i = 0; i < 10; ++i) {
    even[PairKey{"a" + std::to_string(i), "b"}].counts[{"c", 2016}] = {5, 5};
    frozen[PairKey{"a" + std::to_string(i), "b"}].counts[{"c", 2016}] = i % 2 ? SliceCounts{0, 9} : SliceCounts{9, 0};
  }
  EXPECT_EQ(frozenness_summary(even).frozen_fraction, 0.0);
  EXPECT_EQ(frozenness_summary(frozen).frozen_fraction, 1.0);
  EXPECT_THROW(frozenness_summary(even, 0.5), ArgumentError);
  EXPECT_THROW(frozenness_summary(even, 1.01), ArgumentError);
}

TEST(Frozenness, GeneratedQuarterFrozen) {
  // 400 pairs; exactly 100 are drawn with asymmetry >= 0.97 by construction.
  std::mt19937_64 gen(5);
  PairTable t;
  std::size_t planted = 0;
  for (int i = 0; i < 400; ++i) {
    const bool freeze = i % 4 == 0;
    planted += freeze;
    const std::uint64_t n = 100 + gen() % 200;
    const std::uint64_t minority = freeze ? gen() % (n / 100 + 1) : n / 10 + gen() % (n / 3);
    t[PairKey{"p" + std::to_string(i), "q"}].counts[{"c", 2016}] = {n - minority, minority};
  }
  const auto s = frozenness_summary(t, 0.97);
  EXPECT_EQ(s.total_pairs, 400u);
  EXPECT_NEAR(s.frozen_fraction, static_cast<double>(planted) / 400.0, 0.01);
  EXPECT_NEAR(s.frozen_fraction, 0.25, 0.01);
}

TEST(Histogram, BernoulliHalfCorpusIsUnimodalNearHalf) {
  std::mt19937_64 gen(6);
  std::vector<double> ords;
  for (int p = 0; p < 2000; ++p) {
    std::uint64_t f = 0;
    for (int i = 0; i < 200; ++i) f += gen() & 1;
    ords.push_back(ordinality(f, 200 - f));
  }
  const auto h = unit_histogram(ords, 20);
  const auto peak = static_cast<std::size_t>(std::max_element(h.begin(), h.end()) - h.begin());
  EXPECT_TRUE(peak == 9 || peak == 10);
  for (std::size_t b = 1; b <= peak; ++b) EXPECT_LE(h[b - 1], h[b]);
  for (std::size_t b = peak + 1; b < h.size(); ++b) EXPECT_LE(h[b], h[b - 1]);
}

TEST(Histogram, EdgesAndErrors) {
  const auto h = unit_histogram({0.0, 0.05, 0.5, 1.0, std::nan("")}, 10);
  EXPECT_EQ(h[0], 2u);
  EXPECT_EQ(h[5], 1u);
  EXPECT_EQ(h[9], 1u);
  EXPECT_THROW(unit_histogram({}, 0), ArgumentError);
}

TEST(MetricsTable, NullsForUndefinedAndFixedHeader) {
  PairTable t;
  t[PairKey{"a", "b"}].counts[{"c", 2016}] = {40, 10};
  t[PairKey{"c", "d"}].counts[{"c", 2016}] = {2, 1};
  const auto csv = metrics_csv(metrics_rows(t, 30));
  EXPECT_EQ(csv,
            "pair,first,second,n_forward,n_backward,ordinality,asymmetry,movement,agreement\n"
            "a|b,a,b,40,10,0.800000,0.600000,0.000000,1.000000\n"
            "c|d,c,d,2,1,0.666667,0.333333,null,null\n");
}

}  // namespace
