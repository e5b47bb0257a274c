#include <gtest/gtest.h>

#include <map>
#include <random>

#include "binomials/counts.hpp"
#include "binomials/errors.hpp"
#include "binomials/extract.hpp"
#include "binomials/extraction.hpp"
#include "binomials/text_io.hpp"
#include "binomials/tokenize.hpp"
#include "support/oracles.hpp"

namespace {

using namespace binomials;

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.surface);
  return out;
}

std::vector<Token> as_tokens(const std::vector<std::string>& words) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size(); ++i) out.push_back(Token{words[i], i});
  return out;
}

const NameCatalog& fixture_catalog() {
  static const NameCatalog c = NameCatalog::load(oracle::fixture_dir() / "catalog.txt");
  return c;
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(surfaces("Salt and Pepper!"), (std::vector<std::string>{"salt", "and", "pepper"}));
  EXPECT_TRUE(surfaces("").empty());
  EXPECT_EQ(surfaces("LeBron/KD vs. Kawhi"), (std::vector<std::string>{"lebron", "/", "kd", "vs.", "kawhi"}));
}

TEST(Tokenize, PositionsAreIndices) {
  const auto toks = tokenize("a, b and c");
  for (std::size_t i = 0; i < toks.size(); ++i) EXPECT_EQ(toks[i].position, i);
}

TEST(Tokenize, HandTokenizedFixture) {
  std::size_t cases = 0;
  for (const auto& line : oracle::lines_of(oracle::slurp(oracle::source_dir() / "tests" / "data" / "tokenize_cases.tsv"))) {
    if (!line.empty() && line[0] == '#') continue;
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const std::string input = line.substr(0, tab);
    std::vector<std::string> expected;
    std::istringstream ws(line.substr(tab + 1));
    for (std::string w; ws >> w;) expected.push_back(w);
    EXPECT_EQ(surfaces(input), expected) << "input: " << input;
    ++cases;
  }
  EXPECT_EQ(cases, 50u);
}

TEST(Tokenize, AgreesWithRegexOnGeneratedAscii) {
  // Alphabet without '_' or r/ and u/ prefixes, where the two tokenizers differ by design.
  const std::string alphabet = "abcdefghijklmnopqstvwxyzABCDEFGHIJ0123456789 ,./'!?-\"()";
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    const auto len = gen() % 60;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[gen() % alphabet.size()];
    if (trial % 3 == 0) text += " vs. v.s. u.s. ";
    ASSERT_EQ(surfaces(text), oracle::regex_tokens(text)) << "text: " << text;
  }
}

TEST(Tokenize, TokensAreNonEmptyWithoutWhitespace) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const auto len = gen() % 80;
    for (std::size_t i = 0; i < len; ++i) text += static_cast<char>(1 + gen() % 255);
    for (const auto& t : tokenize(text)) {
      ASSERT_FALSE(t.surface.empty());
      for (const char c : t.surface) {
        ASSERT_FALSE(c == ' ' || c == '\t' || c == '\n' || c == '\r');
        ASSERT_FALSE(c >= 'A' && c <= 'Z');
      }
    }
  }
}

TEST(Tokenize, RedditLinksStayWhole) {
  EXPECT_EQ(surfaces("r/nba and r/nfl"), (std::vector<std::string>{"r/nba", "and", "r/nfl"}));
  TokenizerConfig off;
  off.join_reddit_links = false;
  std::vector<std::string> split_links;
  for (const auto& t : tokenize("r/nba", off)) split_links.push_back(t.surface);
  EXPECT_EQ(split_links, (std::vector<std::string>{"r", "/", "nba"}));
}

TEST(Separators, Mapping) {
  EXPECT_EQ(separator_of("and"), Separator::and_);
  EXPECT_EQ(separator_of("or"), Separator::or_);
  EXPECT_EQ(separator_of("vs"), Separator::vs);
  EXPECT_EQ(separator_of("vs."), Separator::vs);
  EXPECT_EQ(separator_of("v.s."), Separator::vs);
  EXPECT_EQ(separator_of("/"), Separator::slash);
  EXPECT_EQ(separator_of(","), Separator::comma);
  EXPECT_FALSE(separator_of("andor").has_value());
}

TEST(AllWords, Examples) {
  const auto& stop = StopWordList::builtin();
  const auto out = extract_all_words(as_tokens({"salt", "and", "pepper"}), stop);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].items, (std::vector<std::string>{"salt", "pepper"}));
  EXPECT_EQ(out[0].separators, (std::vector<Separator>{Separator::and_}));
  EXPECT_EQ(out[0].method, Method::all_words);
  EXPECT_TRUE(extract_all_words(as_tokens({"bread", "and", "and"}), stop).empty());
}

TEST(AllWords, OverlappingWindowsEachEmit) {
  const auto out = extract_all_words(as_tokens({"a1", "and", "b1", "or", "c1"}), StopWordList{});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].items, (std::vector<std::string>{"a1", "b1"}));
  EXPECT_EQ(out[1].items, (std::vector<std::string>{"b1", "c1"}));
  EXPECT_EQ(out[1].separators, (std::vector<Separator>{Separator::or_}));
}

TEST(AllWords, StopWordsAndRepeatsAreNotItems) {
  const auto stop = StopWordList::parse("the\n# comment\nA\n");
  EXPECT_TRUE(stop.contains("a"));
  EXPECT_TRUE(extract_all_words(as_tokens({"the", "and", "cat"}), stop).empty());
  EXPECT_TRUE(extract_all_words(as_tokens({"cat", "and", "cat"}), stop).empty());
  EXPECT_TRUE(extract_all_words(as_tokens({"cat", "vs", "dog"}), stop).empty());
}

TEST(AllWords, ExtendedCommaChains) {
  const auto toks = as_tokens({"fraud", ",", "waste", ",", "and", "abuse"});
  EXPECT_TRUE(extract_all_words(toks, StopWordList{}, false).empty());
  const auto ext = extract_all_words(toks, StopWordList{}, true);
  ASSERT_EQ(ext.size(), 1u);
  EXPECT_EQ(ext[0].items, (std::vector<std::string>{"fraud", "waste", "abuse"}));
  EXPECT_EQ(ext[0].method, Method::all_words_extended);
  EXPECT_EQ(ext[0].separators, (std::vector<Separator>{Separator::comma, Separator::and_}));

  const auto plain = extract_all_words(as_tokens({"fraud", ",", "waste", "and", "abuse"}), StopWordList{}, true);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0].items.size(), 3u);
}

TEST(AllWords, BuiltinStopWordsMatchBundledFile) {
  const auto file = StopWordList::load(oracle::data_dir() / "stopwords.txt");
  EXPECT_EQ(file.words(), StopWordList::builtin().words());
  EXPECT_GT(file.size(), 50u);
  for (const auto* w : {"the", "and", "or", "i", "you", "is"}) EXPECT_TRUE(file.contains(w)) << w;
}

TEST(AllWords, MatchesWindowOracleOnRandomStreams) {
  const std::vector<std::string> vocab = {"salt", "pepper", "the", "and", "or", ",", "/", "vs", "it", "cat", "dog"};
  const auto& stop = StopWordList::builtin();
  const auto stopset = oracle::read_word_set(oracle::data_dir() / "stopwords.txt");
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> words(gen() % 25);
    for (auto& w : words) w = vocab[gen() % vocab.size()];
    std::vector<std::vector<std::string>> got;
    for (const auto& inst : extract_all_words(as_tokens(words), stop)) {
      ASSERT_EQ(inst.items.size(), 2u);
      ASSERT_EQ(inst.separators.size(), 1u);
      ASSERT_TRUE(inst.separators[0] == Separator::and_ || inst.separators[0] == Separator::or_);
      for (const auto& item : inst.items) ASSERT_FALSE(stop.contains(item));
      got.push_back(inst.items);
    }
    ASSERT_EQ(got, oracle::oracle_all_words(words, stopset));
  }
}

TEST(NameLists, Examples) {
  const auto& cat = fixture_catalog();
  const auto two = extract_name_lists(as_tokens({"kobe", "and", "lebron"}), cat);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].items, (std::vector<std::string>{"kobe bryant", "lebron james"}));
  EXPECT_EQ(two[0].method, Method::names_only);

  const auto three = extract_name_lists(as_tokens({"curry", ",", "durant", ",", "and", "thompson"}), cat);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0].items, (std::vector<std::string>{"stephen curry", "kevin durant", "klay thompson"}));
  EXPECT_EQ(three[0].separators, (std::vector<Separator>{Separator::comma, Separator::and_}));
}

TEST(NameLists, SeparatorsAndAliases) {
  const auto& cat = fixture_catalog();
  for (const auto* sep : {"vs", "vs.", "v.s.", "/", "or"}) {
    const auto out = extract_name_lists(as_tokens({"steph", sep, "kd"}), cat);
    ASSERT_EQ(out.size(), 1u) << sep;
    EXPECT_EQ(out[0].items, (std::vector<std::string>{"stephen curry", "kevin durant"}));
  }
  // a bare comma never closes a list
  EXPECT_TRUE(extract_name_lists(as_tokens({"steph", ",", "kd"}), cat).empty());
  // longest match wins: "kobe bryant" rather than "kobe"
  const auto full = extract_name_lists(as_tokens({"kobe", "bryant", "and", "lebron", "james"}), cat);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0].items, (std::vector<std::string>{"kobe bryant", "lebron james"}));
}

TEST(NameLists, AmbiguousPartsUsePriority) {
  const auto cat = NameCatalog::parse(
      "Donald Trump||priority=2\nPhiladelph Van Trump||priority=1\nJohn Smith\nJane Smith\n");
  EXPECT_EQ(cat.resolve("trump"), "donald trump");
  EXPECT_EQ(cat.resolve("smith"), "smith");  // no priority: kept as the part
  EXPECT_EQ(cat.resolve("jane"), "jane smith");
  const auto out = extract_name_lists(as_tokens({"trump", "and", "smith"}), cat);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].items, (std::vector<std::string>{"donald trump", "smith"}));
}

TEST(NameLists, MatchesGrammarOracleOnRandomStreams) {
  const auto& cat = fixture_catalog();
  const auto index = oracle::read_catalog(oracle::fixture_dir() / "catalog.txt");
  const std::vector<std::string> vocab = {"kobe", "bryant", "steph", "kd", "trump", "and", "or", "vs", "/", ",",
                                          "the", "ball", "lakers", "warren", "ted", "cruz"};
  std::mt19937_64 gen(23);
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> words(gen() % 20);
    for (auto& w : words) w = vocab[gen() % vocab.size()];
    std::vector<std::vector<std::string>> got;
    for (const auto& inst : extract_name_lists(as_tokens(words), cat)) {
      ASSERT_GE(inst.items.size(), 2u);
      ASSERT_EQ(inst.separators.size(), inst.items.size() - 1);
      got.push_back(inst.items);
    }
    nonempty += !got.empty();
    ASSERT_EQ(got, oracle::oracle_name_lists(words, index));
  }
  EXPECT_GT(nonempty, 300u);
}

TEST(Catalog, ParsesAttributesAndRejectsBadLines) {
  const auto& cat = fixture_catalog();
  EXPECT_EQ(cat.attribute("lebron james", "team"), "lakers");
  EXPECT_EQ(cat.numeric_attribute("kobe bryant", "rings"), 5.0);
  EXPECT_TRUE(cat.has_attribute_key("party"));
  EXPECT_FALSE(cat.has_attribute_key("height"));
  EXPECT_THROW(NameCatalog::parse("a|b|c|d\n"), ArgumentError);
  EXPECT_THROW(NameCatalog::parse("Name||novalue\n"), ArgumentError);
}

ExtractConfig fixture_config() {
  ExtractConfig c;
  c.catalog = &fixture_catalog();
  return c;
}

TEST(Extract, FixturePlantedNameListsRecovered) {
  const auto planted = nlohmann::json::parse(oracle::slurp(oracle::fixture_dir() / "planted.json"));
  const auto r = extract_files_serial({oracle::fixture_dir() / "corpus.jsonl"}, fixture_config());
  std::uint64_t names = 0;
  for (const auto& [key, n] : r.lists.entries()) {
    if (key.method == Method::names_only) names += n;
  }
  EXPECT_EQ(names, planted.at("name_lists").get<std::uint64_t>());
  EXPECT_EQ(r.summary.read, planted.at("records").get<std::size_t>());
}

TEST(Extract, FixtureMatchesOracleMultiset) {
  const auto oracle_result = oracle::oracle_extract(oracle::fixture_dir() / "corpus.jsonl", oracle::fixture_dir() / "catalog.txt");
  const auto r = extract_files_serial({oracle::fixture_dir() / "corpus.jsonl"}, fixture_config());
  oracle::InstanceMultiset got;
  for (const auto& [key, n] : r.lists.entries()) {
    got[{std::string(to_string(key.method)), key.items, key.slice.community, key.slice.season_year}] += static_cast<long>(n);
  }
  EXPECT_EQ(got, oracle_result.instances);
}

TEST(Extract, FixtureAndShareNearEightyThreePercent) {
  // Separator shares over All Words instances, recomputed per record.
  const auto& stop = StopWordList::builtin();
  std::size_t ands = 0, total = 0;
  for (const auto& rec : read_corpus(oracle::fixture_dir() / "corpus.jsonl", ReadOptions{})) {
    for (const auto& inst : extract_all_words(tokenize(rec.text), stop)) {
      ++total;
      ands += inst.separators[0] == Separator::and_;
    }
  }
  ASSERT_GT(total, 500u);
  EXPECT_NEAR(static_cast<double>(ands) / static_cast<double>(total), 0.83, 0.02);
}

TEST(Extract, ShardedRunsEqualSerialReference) {
  const auto path = oracle::fixture_dir() / "corpus.jsonl";
  const auto serial = extract_files_serial({path}, fixture_config());
  for (std::size_t shards : {1, 2, 3, 5, 8, 64}) {
    EXPECT_EQ(extract_files({path}, fixture_config(), shards), serial) << shards << " shards";
  }
}

TEST(Extract, ShardPlanCoversFileOnLineBoundaries) {
  const auto path = oracle::fixture_dir() / "corpus.jsonl";
  const auto text = oracle::slurp(path);
  for (std::size_t n : {1, 2, 7, 32, 1000}) {
    const auto shards = plan_shards(path, n, CorpusFormat::jsonl);
    ASSERT_LE(shards.size(), n);
    ASSERT_EQ(shards.front().begin, 0u);
    ASSERT_EQ(shards.back().end, text.size());
    for (std::size_t i = 0; i < shards.size(); ++i) {
      if (i > 0) {
        ASSERT_EQ(shards[i].begin, shards[i - 1].end);
        ASSERT_EQ(text[shards[i].begin - 1], '\n');
      }
      ASSERT_LT(shards[i].begin, shards[i].end);
    }
  }
  EXPECT_EQ(plan_shards(path, 8, CorpusFormat::csv).size(), 1u);
}

TEST(Extract, MergeIsCommutativeAndAssociative) {
  const auto path = oracle::fixture_dir() / "corpus.jsonl";
  const auto shards = plan_shards(path, 3, CorpusFormat::jsonl);
  ASSERT_EQ(shards.size(), 3u);
  std::vector<ExtractResult> parts;
  for (const auto& s : shards) parts.push_back(extract_shard(s, fixture_config()));
  ExtractResult abc = parts[0], cba = parts[2], bc = parts[1];
  abc.merge(parts[1]);
  abc.merge(parts[2]);
  cba.merge(parts[1]);
  cba.merge(parts[0]);
  bc.merge(parts[2]);
  ExtractResult a_bc = parts[0];
  a_bc.merge(bc);
  EXPECT_EQ(abc, cba);
  EXPECT_EQ(abc, a_bc);
}

TEST(Counts, TsvRoundTripAndSortedOrder) {
  const auto r = extract_files_serial({oracle::fixture_dir() / "corpus.jsonl"}, fixture_config());
  const auto tsv = r.lists.to_tsv();
  EXPECT_EQ(ListCounts::from_tsv(tsv), r.lists);
  EXPECT_EQ(ListCounts::from_tsv(tsv).to_tsv(), tsv);
  const auto entries = r.lists.entries();
  for (std::size_t i = 1; i < entries.size(); ++i) ASSERT_LT(entries[i - 1].first, entries[i].first);
  const auto views = r.lists.views();
  ASSERT_EQ(views.size(), entries.size());
  for (std::size_t i = 0; i < views.size(); ++i) {
    ASSERT_EQ(views[i].count, entries[i].second);
    ASSERT_EQ(std::string(views[i].community), entries[i].first.slice.community);
  }
  EXPECT_EQ(WordCounts::from_tsv(r.unigrams.to_tsv()), r.unigrams);
}

TEST(Counts, NegativeAndUndatedSeasonsSortAndRoundTrip) {
  ListCounts c;
  const std::vector<std::string_view> ab = {"a", "b"};
  c.add(Method::all_words, "x", kUndatedSeason, ab, 2);
  c.add(Method::all_words, "x", -5, ab, 3);
  c.add(Method::all_words, "x", 2017, ab, 4);
  c.add(Method::all_words, "w", 2017, ab, 1);
  const auto e = c.entries();
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].first.slice.community, "w");
  EXPECT_EQ(e[1].first.slice.season_year, kUndatedSeason);
  EXPECT_EQ(e[2].first.slice.season_year, -5);
  EXPECT_EQ(e[3].first.slice.season_year, 2017);
  EXPECT_EQ(ListCounts::from_tsv(c.to_tsv()), c);
  EXPECT_EQ(c.total(), 10u);
}

TEST(Counts, MalformedTsvIsRejected) {
  EXPECT_THROW(ListCounts::from_tsv("all_words\tx\t2017\tmany\ta\tb\n"), FormatMismatchError);
  EXPECT_THROW(ListCounts::from_tsv("nonsense\tx\t2017\t1\ta\tb\n"), FormatMismatchError);
  EXPECT_THROW(WordCounts::from_tsv("word\n"), FormatMismatchError);
}

TEST(FilterMinCount, Boundaries) {
  std::vector<ListInstance> instances;
  for (int i = 0; i < 29; ++i) instances.push_back(ListInstance{{"salt", "pepper"}, {Separator::and_}, Method::all_words, {"food", 2017}});
  for (int i = 0; i < 30; ++i) instances.push_back(ListInstance{{"fish", "chips"}, {Separator::and_}, Method::all_words, {"food", 2017}});
  const auto kept = filter_min_count(instances, 30);
  const auto e = kept.entries();
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].first.items, (std::vector<std::string>{"fish", "chips"}));
  EXPECT_EQ(e[0].second, 30u);
  EXPECT_THROW(filter_min_count(instances, 0), ArgumentError);
}

TEST(FilterMinCount, PoolsOrientationsAndSlices) {
  ListCounts c;
  const std::vector<std::string_view> ab = {"a", "b"}, ba = {"b", "a"};
  c.add(Method::all_words, "x", 2016, ab, 10);
  c.add(Method::all_words, "y", 2017, ba, 20);
  c.add(Method::names_only, "x", 2016, ab, 5);
  const auto kept = filter_min_count(c, 30);
  EXPECT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept.total(), 30u);
}

TEST(FilterMinCount, FixtureMatchesHashMapOracle) {
  const auto r = extract_files_serial({oracle::fixture_dir() / "corpus.jsonl"}, fixture_config());
  for (std::uint64_t k : {1, 2, 3, 10, 30}) {
    std::map<std::pair<int, std::vector<std::string>>, std::uint64_t> totals;
    const auto entries = r.lists.entries();
    for (const auto& [key, n] : entries) {
      auto items = key.items;
      std::sort(items.begin(), items.end());
      totals[{static_cast<int>(key.method), items}] += n;
    }
    std::vector<std::pair<ListKey, std::uint64_t>> expected;
    for (const auto& [key, n] : entries) {
      auto items = key.items;
      std::sort(items.begin(), items.end());
      if (totals[{static_cast<int>(key.method), items}] >= k) expected.emplace_back(key, n);
    }
    EXPECT_EQ(filter_min_count(r.lists, k).entries(), expected) << "k=" << k;
  }
}

TEST(Counts, LengthHistogram) {
  ListCounts c;
  const std::vector<std::string_view> two = {"a", "b"}, three = {"a", "b", "c"};
  c.add(Method::all_words, "x", 2016, two, 4);
  c.add(Method::names_only, "x", 2016, three, 2);
  c.add(Method::names_only, "y", 2016, three, 1);
  const auto h = length_histogram(c);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], std::make_tuple(Method::all_words, std::size_t{2}, std::uint64_t{4}));
  EXPECT_EQ(h[1], std::make_tuple(Method::names_only, std::size_t{3}, std::uint64_t{3}));
}

}  // namespace
