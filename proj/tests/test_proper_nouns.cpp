#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "binomials/errors.hpp"
#include "binomials/proper_nouns.hpp"

namespace {

using namespace binomials;

void add2(ListCounts& lc, std::string_view community, std::string_view a, std::string_view b, std::uint64_t n,
          Method method = Method::names_only, int year = 2016) {
  const std::vector<std::string_view> items = {a, b};
  lc.add(method, community, year, items, n);
}

TEST(Proximity, FromCounts) {
  const auto r = proximity_from_counts(2520, 1894);
  EXPECT_NEAR(r.fraction_first, 0.571, 5e-4);
  EXPECT_EQ(r.fraction_first + r.fraction_second, 1.0);
  EXPECT_EQ(proximity_from_counts(12, 0).fraction_first, 1.0);
  EXPECT_THROW(proximity_from_counts(0, 0), EmptyInputError);
}

TEST(Proximity, PlantedThreeToOne) {
  ListCounts lc;
  add2(lc, "lakers", "lebron james", "kobe bryant", 30);
  add2(lc, "lakers", "kobe bryant", "lebron james", 10);
  add2(lc, "lakers", "tim duncan", "kobe bryant", 20);  // home entity absent
  add2(lc, "warriors", "lebron james", "stephen curry", 99);  // other community
  add2(lc, "lakers", "lebron james", "kobe bryant", 50, Method::all_words);  // other method
  const std::vector<std::string_view> three = {"lebron james", "a", "b"};
  lc.add(Method::names_only, "lakers", 2016, three, 7);  // three items
  const auto r = proximity_counts(lc, HomeContext{"lakers", "lebron james"});
  EXPECT_EQ(r.home_first, 30u);
  EXPECT_EQ(r.home_second, 10u);
  EXPECT_EQ(r.fraction_first, 0.75);
  EXPECT_THROW(proximity_counts(lc, HomeContext{"lakers", "nobody"}), EmptyInputError);
}

TEST(Proximity, FractionsAlwaysComplement) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t a = gen() % 10000, b = gen() % 10000 + (a == 0);
    const auto r = proximity_from_counts(a, b);
    ASSERT_NEAR(r.fraction_first + r.fraction_second, 1.0, 1e-15);
    ASSERT_GE(r.fraction_first, 0.0);
    ASSERT_LE(r.fraction_first, 1.0);
  }
}

TEST(HomeMap, ParseAndReject) {
  const auto m = parse_home_map("# community=entity\nlakers = LeBron James\n\nwarriors=stephen curry\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("lakers"), "lebron james");
  EXPECT_THROW(parse_home_map("lakers\n"), ArgumentError);
  EXPECT_THROW(parse_home_map("=x\n"), ArgumentError);
  EXPECT_THROW(parse_home_map("x=\n"), ArgumentError);
}

TEST(CrossMatrix, FloorAndRecount) {
  const HomeMap homes = {{"a", "alice"}, {"b", "bob"}, {"c", "carol"}};
  ListCounts lc;
  add2(lc, "a", "alice", "bob", 20);
  add2(lc, "a", "bob", "alice", 10);
  add2(lc, "a", "alice", "carol", 29);
  add2(lc, "b", "alice", "bob", 45);
  add2(lc, "b", "bob", "alice", 5);
  add2(lc, "a", "alice", "dave", 100);  // dave is nobody's home
  const auto m = cross_community_matrix(lc, homes);
  ASSERT_EQ(m.communities, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(m.cells[0][1].n, 30u);
  EXPECT_NEAR(*m.cells[0][1].score, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(m.cells[0][2].n, 29u);
  EXPECT_FALSE(m.cells[0][2].score.has_value());
  EXPECT_EQ(m.cells[1][0].n, 50u);
  EXPECT_EQ(*m.cells[1][0].score, 0.1);
  EXPECT_FALSE(m.cells[2][0].score.has_value());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_FALSE(m.cells[i][i].score.has_value());
  const auto csv = cross_community_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "community,other,n,score");
  EXPECT_NE(csv.find("a,c,29,null\n"), std::string::npos);
  EXPECT_NE(csv.find("b,a,50,0.100000\n"), std::string::npos);
}

TEST(CrossMatrix, MatchesDirectRecount) {
  std::mt19937_64 gen(2);
  const std::vector<std::string> communities = {"a", "b", "c", "d"};
  const std::vector<std::string> entities = {"ea", "eb", "ec", "ed", "stranger"};
  HomeMap homes;
  for (std::size_t i = 0; i < 4; ++i) homes[communities[i]] = entities[i];
  for (int trial = 0; trial < 30; ++trial) {
    ListCounts lc;
    std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> raw;
    for (int i = 0; i < 40; ++i) {
      const auto& c = communities[gen() % 4];
      const auto& x = entities[gen() % 5];
      const auto& y = entities[gen() % 5];
      if (x == y) continue;
      const std::uint64_t n = 1 + gen() % 20;
      add2(lc, c, x, y, n);
      raw[{c, x, y}] += n;
    }
    const auto m = cross_community_matrix(lc, homes, 30);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t col = 0; col < 4; ++col) {
        if (r == col) continue;
        std::uint64_t first = 0, total = 0;
        for (const auto& [k, n] : raw) {
          const auto& [c, x, y] = k;
          if (c != communities[r]) continue;
          if (x == entities[r] && y == entities[col]) first += n, total += n;
          if (y == entities[r] && x == entities[col]) total += n;
        }
        ASSERT_EQ(m.cells[r][col].n, total);
        ASSERT_EQ(m.cells[r][col].score.has_value(), total >= 30);
        if (total >= 30) {
          ASSERT_EQ(*m.cells[r][col].score, static_cast<double>(first) / static_cast<double>(total));
        }
      }
    }
  }
}

NameCatalog politicians() {
  return NameCatalog::parse(
      "Hillary Clinton|hillary,clinton|party=D\n"
      "Bernie Sanders|bernie,sanders|party=D\n"
      "Donald Trump|trump|party=R\n"
      "Ted Cruz|cruz|party=R\n"
      "Gary Johnson|johnson\n");
}

TEST(Party, CountsWithMissingItemized) {
  const auto cat = politicians();
  ListCounts lc;
  add2(lc, "politics", "hillary clinton", "donald trump", 12);
  add2(lc, "politics", "donald trump", "hillary clinton", 5);
  add2(lc, "politics", "hillary clinton", "bernie sanders", 7);
  add2(lc, "politics", "donald trump", "gary johnson", 3);
  add2(lc, "news", "ted cruz", "bernie sanders", 4);
  const auto all = party_order_counts(lc, cat);
  EXPECT_EQ(all.qualifying, 31u);
  EXPECT_EQ(all.missing_party, 3u);
  EXPECT_EQ(all.counted(), 28u);
  EXPECT_EQ(all.counts.at({"D", "R"}), 12u);
  EXPECT_EQ(all.counts.at({"R", "D"}), 9u);
  EXPECT_EQ(all.counts.at({"D", "D"}), 7u);
  const auto pol = party_order_counts(lc, cat, "party", std::string_view("politics"));
  EXPECT_EQ(pol.qualifying, 27u);
  EXPECT_EQ(pol.counts.at({"R", "D"}), 5u);
  const auto csv = party_order_csv(all);
  EXPECT_NE(csv.find("D,R,12\n"), std::string::npos);
  EXPECT_NE(csv.find("# qualifying,31,missing_party,3\n"), std::string::npos);
}

NameCatalog players() {
  return NameCatalog::parse(
      "Star Player|star|mentions_wiki=10000;team=alpha\n"
      "Bench Player|bench|mentions_wiki=100;team=beta\n"
      "Mid Player|mid|mentions_wiki=100\n"
      "Unknown Player|unknown|\n");
}

TEST(Metadata, PredictAndFlip) {
  const auto cat = players();
  const EntityMetadata md(cat);
  const auto key = make_pair_key("bench player", "star player");
  EXPECT_EQ(metadata_predict(key, "mentions_wiki", true, md), Orientation::backward);
  EXPECT_EQ(metadata_predict(key, "mentions_wiki", false, md), Orientation::forward);
  EXPECT_FALSE(metadata_predict(make_pair_key("bench player", "mid player"), "mentions_wiki", true, md).has_value());
  EXPECT_FALSE(metadata_predict(make_pair_key("star player", "unknown player"), "mentions_wiki", true, md).has_value());
  EXPECT_THROW(metadata_predict(key, "salary", true, md), ArgumentError);
}

TEST(Metadata, DeterminingAttributeScoresPerfectly) {
  const auto name = [](int i) { return std::string(1, static_cast<char>('a' + i)) + "x name"; };
  std::string text;
  for (int i = 0; i < 20; ++i) text += name(i) + "||rank=" + std::to_string(i) + "\n";
  const auto cat = NameCatalog::parse(text);
  const EntityMetadata md(cat);
  std::mt19937_64 gen(3);
  PairTable t;
  for (int k = 0; k < 40; ++k) {
    int a = static_cast<int>(gen() % 20), b = static_cast<int>(gen() % 20);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    // the higher rank always comes first
    add_observation(t, name(b), name(a), {"c", 2016}, 1 + gen() % 9);
  }
  const auto ev = evaluate_metadata(t, "rank", true, md);
  ASSERT_TRUE(ev.card.has_value());
  EXPECT_EQ(ev.covered, ev.total);
  EXPECT_EQ(ev.card->uo, 1.0);
  EXPECT_EQ(ev.card->wt, 1.0);
  const auto flipped = evaluate_metadata(t, "rank", false, md);
  EXPECT_EQ(flipped.card->wo, 0.0);
}

TEST(Metadata, DerivedTeamMentions) {
  const auto cat = players();
  EntityMetadata md(cat);
  WordCounts mentions, unigrams;
  mentions.add("alpha", 500);
  unigrams.add("beta", 40);
  add_team_mentions(md, cat, mentions, unigrams);
  EXPECT_EQ(md.numeric("star player", "team_mentions"), 500.0);
  EXPECT_EQ(md.numeric("bench player", "team_mentions"), 40.0);
  EXPECT_FALSE(md.numeric("mid player", "team_mentions").has_value());
  EXPECT_TRUE(md.has_key("team_mentions"));
}

TEST(MentionRatio, ExampleAndExclusions) {
  ListCounts lc;
  add2(lc, "nba", "kobe bryant", "lebron james", 3);
  add2(lc, "nba", "lebron james", "kobe bryant", 2);
  add2(lc, "nba", "kobe bryant", "lebron james", 9, Method::all_words);  // not Names Only
  WordCounts mentions;
  mentions.add("kobe bryant", 100);
  mentions.add("lebron james", 29);
  mentions.add("magic johnson", 500);
  const auto english = parse_word_list("# common words\nmagic\nthe\n");
  EXPECT_EQ(mention_ratio("kobe bryant", lc, mentions, english), 0.05);
  EXPECT_FALSE(mention_ratio("lebron james", lc, mentions, english).has_value());
  EXPECT_FALSE(mention_ratio("magic johnson", lc, mentions, english).has_value());
  EXPECT_EQ(mention_ratio("lebron james", lc, mentions, english, 29), 5.0 / 29.0);
  const auto r = mention_ratios(lc, mentions, english);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].entity, "kobe bryant");
  EXPECT_EQ(r.rows[0].list_instances, 5u);
  EXPECT_EQ(r.excluded_english, 1u);
  EXPECT_EQ(r.excluded_floor, 1u);
  EXPECT_EQ(r.average, 0.05);
  EXPECT_EQ(mention_ratio_csv(r), "entity,list_instances,mentions,ratio\nkobe bryant,5,100,0.050000\n");
}

TEST(MentionRatio, EmptyReportHasNoAverage) {
  const auto r = mention_ratios(ListCounts{}, WordCounts{}, StringSet{});
  EXPECT_TRUE(r.rows.empty());
  EXPECT_FALSE(r.average.has_value());
}

}  // namespace
