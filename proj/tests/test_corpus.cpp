#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "binomials/corpus.hpp"
#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"
#include "support/oracles.hpp"

namespace {

using namespace binomials;

// 2017-04-30T12:00:00Z and 2017-05-01T00:00:00Z
constexpr std::int64_t kApril30 = 1493553600;
constexpr std::int64_t kMay1 = 1493596800;

SeasonCalendar calendar_with(std::string community, int month) {
  SeasonCalendar c;
  c.overrides[std::move(community)] = month;
  return c;
}

TEST(Corpus, JsonlFieldMapping) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "one.jsonl";
  write_file(path, R"({"body":"salt and pepper","created_utc":1500000000,"subreddit":"food"})"
                   "\n");
  ReadSummary summary;
  const auto records = read_corpus(path, ReadOptions{}, &summary);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].text, "salt and pepper");
  EXPECT_EQ(records[0].community, "food");
  EXPECT_EQ(records[0].timestamp, 1500000000);
  EXPECT_FALSE(records[0].author.has_value());
  EXPECT_EQ(summary, (ReadSummary{1, 0}));
}

TEST(Corpus, StringTimestampsAndEscapes) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "esc.jsonl";
  write_file(path, R"({"body":"fish \"and\" chips\n","created_utc":"1500000000","subreddit":"food","author":"x"})"
                   "\n");
  const auto records = read_corpus(path, ReadOptions{});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].text, "fish \"and\" chips\n");
  EXPECT_EQ(records[0].timestamp, 1500000000);
  EXPECT_EQ(records[0].author, "x");
}

TEST(Corpus, EmptyFileYieldsNothing) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "empty.jsonl";
  write_file(path, "");
  ReadSummary summary{9, 9};
  EXPECT_TRUE(read_corpus(path, ReadOptions{}, &summary).empty());
  EXPECT_EQ(summary, (ReadSummary{0, 0}));
}

TEST(Corpus, BundledFixtureHas200Records) {
  // independent count: non-blank lines
  std::size_t lines = 0;
  for (const auto& l : oracle::lines_of(oracle::slurp(oracle::fixture_dir() / "corpus.jsonl"))) lines += !l.empty();
  ReadSummary summary;
  const auto records = read_corpus(oracle::fixture_dir() / "corpus.jsonl", ReadOptions{}, &summary);
  EXPECT_EQ(lines, 200u);
  EXPECT_EQ(records.size(), lines);
  EXPECT_EQ(summary.skipped, 0u);
}

TEST(Corpus, MalformedLinesAreSkippedUntilHalf) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "mixed.jsonl";
  write_file(path, "{\"body\":\"a\",\"subreddit\":\"x\"}\nnot json\n{\"body\":\"b\",\"subreddit\":\"x\"}\n");
  ReadSummary summary;
  EXPECT_EQ(read_corpus(path, ReadOptions{}, &summary).size(), 2u);
  EXPECT_EQ(summary, (ReadSummary{2, 1}));

  write_file(path, "garbage\n{\"body\":\"b\"}\nmore garbage\n");
  EXPECT_THROW(read_corpus(path, ReadOptions{}), FormatMismatchError);
}

TEST(Corpus, MissingPathIsIoError) {
  EXPECT_THROW(read_corpus("/nonexistent/corpus.jsonl", ReadOptions{}), IoError);
}

TEST(Corpus, PlainTextUsesConfiguredCommunity) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "wine.txt";
  write_file(path, "crisp and dry\n\nsweet or sour\n");
  ReadOptions options;
  options.format = CorpusFormat::plain;
  options.community = "wine";
  const auto records = read_corpus(path, options);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1].text, "sweet or sour");
  EXPECT_EQ(records[1].community, "wine");
  EXPECT_FALSE(records[1].timestamp.has_value());
}

TEST(Corpus, CsvWithQuotedNewlinesAndCustomColumn) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "news.csv";
  write_file(path, "id,headline,community\n1,\"war, and peace\nagain\",news\n2,plain or simple,news\n");
  ReadOptions options;
  options.format = CorpusFormat::csv;
  options.csv_text_column = "headline";
  const auto records = read_corpus(path, options);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].text, "war, and peace\nagain");
  EXPECT_EQ(records[0].community, "news");
  EXPECT_EQ(records[1].text, "plain or simple");
}

TEST(Corpus, CsvWithoutTextColumnIsRejected) {
  oracle::TempDir tmp;
  const auto path = tmp.path() / "bad.csv";
  write_file(path, "a,b\n1,2\n");
  ReadOptions options;
  options.format = CorpusFormat::csv;
  EXPECT_THROW(read_corpus(path, options), FormatMismatchError);
}

TEST(Corpus, ConcatenationIsMultisetUnion) {
  const auto whole_path = oracle::fixture_dir() / "corpus.jsonl";
  const auto lines = oracle::lines_of(oracle::slurp(whole_path));
  oracle::TempDir tmp;
  std::string a, b;
  for (std::size_t i = 0; i < lines.size(); ++i) (i < 77 ? a : b) += lines[i] + "\n";
  write_file(tmp.path() / "a.jsonl", a);
  write_file(tmp.path() / "b.jsonl", b);
  const auto key = [](const CorpusRecord& r) { return std::tuple(r.text, r.community, r.timestamp, r.author); };
  std::vector<decltype(key(CorpusRecord{}))> whole, parts;
  for (const auto& r : read_corpus(whole_path, ReadOptions{})) whole.push_back(key(r));
  for (const auto* name : {"a.jsonl", "b.jsonl"}) {
    for (const auto& r : read_corpus(tmp.path() / name, ReadOptions{})) parts.push_back(key(r));
  }
  std::sort(whole.begin(), whole.end());
  std::sort(parts.begin(), parts.end());
  EXPECT_EQ(whole, parts);
}

TEST(Corpus, StreamingReaderMatchesBulkRead) {
  const auto path = oracle::fixture_dir() / "corpus.jsonl";
  CorpusReader reader(path, ReadOptions{});
  std::vector<std::string> streamed;
  while (auto r = reader.next()) streamed.push_back(r->text);
  std::vector<std::string> bulk;
  for (const auto& r : read_corpus(path, ReadOptions{})) bulk.push_back(r.text);
  EXPECT_EQ(streamed, bulk);
  EXPECT_EQ(reader.summary().read, 200u);
}

TEST(Season, StartMonthBoundary) {
  const auto cal = calendar_with("nfl", 5);
  EXPECT_EQ(season_year_of("nfl", kApril30, cal), 2016);
  EXPECT_EQ(season_year_of("nfl", kMay1, cal), 2017);
  EXPECT_EQ(season_year_of("nfl", kMay1 - 1, cal), 2016);
}

TEST(Season, PoliticsJanuaryFallsInPreviousYear) {
  // 2014-01-15T00:00:00Z
  EXPECT_EQ(season_year_of("politics", 1389744000, calendar_with("politics", 2)), 2013);
}

TEST(Season, UnknownCommunityUsesDefaultMonth) {
  SeasonCalendar cal;
  cal.default_start_month = 3;
  EXPECT_EQ(season_year_of("anything", 1389744000, cal), 2013);
  EXPECT_EQ(season_year_of("anything", kMay1, cal), 2017);
}

TEST(Season, UndatedRecordsGetSentinel) {
  const auto key = assign_season("wine", std::nullopt, default_calendar());
  EXPECT_EQ(key.season_year, kUndatedSeason);
  EXPECT_FALSE(key.dated());
}

TEST(Season, BoundaryTable) {
  // (timestamp, start month, expected season year); hand-computed, then confirmed against gmtime.
  struct Row {
    std::int64_t ts;
    int month;
    int season;
  };
  const Row rows[] = {
      {1451606399, 1, 2015},  // 2015-12-31 23:59:59
      {1451606400, 1, 2016},  // 2016-01-01 00:00:00
      {1454284799, 2, 2015},  // 2016-01-31 23:59:59
      {1454284800, 2, 2016},  // 2016-02-01
      {1456704000, 3, 2015},  // 2016-02-29 (leap day)
      {1456790400, 3, 2016},  // 2016-03-01
      {1462060799, 5, 2015},  // 2016-04-30 23:59:59
      {1462060800, 5, 2016},  // 2016-05-01
      {1470009599, 8, 2015},  // 2016-07-31 23:59:59
      {1470009600, 8, 2016},  // 2016-08-01
      {1483228799, 8, 2016},  // 2016-12-31 23:59:59
      {1483228800, 8, 2016},  // 2017-01-01
      {1501545599, 8, 2016},  // 2017-07-31 23:59:59
      {1501545600, 8, 2017},  // 2017-08-01
      {951868800, 3, 2000},   // 2000-03-01 (century leap year)
      {951782400, 3, 1999},   // 2000-02-29
      {0, 1, 1970},           // epoch
      {-1, 1, 1969},          // 1969-12-31 23:59:59
      {4102444800, 12, 2099}, // 2100-01-01
      {4133980799, 12, 2100}, // 2100-12-31 23:59:59
  };
  for (const auto& r : rows) {
    const auto cal = calendar_with("c", r.month);
    EXPECT_EQ(season_year_of("c", r.ts, cal), r.season) << r.ts;
    EXPECT_EQ(oracle::oracle_season(r.ts, r.month), r.season) << r.ts;
  }
}

TEST(Season, AgreesWithGmtimeOnRandomTimestamps) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 5000; ++i) {
    const auto ts = static_cast<std::int64_t>(gen() % 4'000'000'000ULL) - 500'000'000;
    const int month = 1 + static_cast<int>(gen() % 12);
    ASSERT_EQ(season_year_of("c", ts, calendar_with("c", month)), oracle::oracle_season(ts, month)) << ts;
  }
}

TEST(Season, MonotoneInDate) {
  std::mt19937_64 gen(12);
  for (int month = 1; month <= 12; ++month) {
    const auto cal = calendar_with("c", month);
    std::vector<std::int64_t> ts(400);
    for (auto& t : ts) t = static_cast<std::int64_t>(gen() % 2'000'000'000ULL);
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i) {
      ASSERT_LE(season_year_of("c", ts[i - 1], cal), season_year_of("c", ts[i], cal));
    }
  }
}

TEST(Season, PureFunction) {
  const auto cal = default_calendar();
  for (std::int64_t t = 1300000000; t < 1500000000; t += 7777777) {
    EXPECT_EQ(assign_season("nba", t, cal), assign_season("nba", t, cal));
  }
}

TEST(Calendar, DefaultMatchesBundledFile) {
  const auto bundled = load_calendar(oracle::data_dir() / "calendar.txt");
  const auto builtin = default_calendar();
  EXPECT_EQ(bundled.default_start_month, builtin.default_start_month);
  EXPECT_EQ(bundled.overrides, builtin.overrides);
  EXPECT_EQ(builtin.start_month("nfl"), 5);
  EXPECT_EQ(builtin.start_month("nba"), 8);
  EXPECT_EQ(builtin.start_month("politics"), 2);
  EXPECT_EQ(builtin.start_month("food"), 1);
}

TEST(Calendar, ParseAndSerializeRoundTrip) {
  const auto cal = parse_calendar("# comment\n*=3\nnba=8\n  nfl = 5 \n");
  EXPECT_EQ(cal.default_start_month, 3);
  EXPECT_EQ(cal.start_month("nfl"), 5);
  const auto again = parse_calendar(serialize_calendar(cal));
  EXPECT_EQ(again.default_start_month, 3);
  EXPECT_EQ(again.overrides, cal.overrides);
}

TEST(Calendar, RejectsBadMonths) {
  EXPECT_THROW(parse_calendar("nba=13\n"), ArgumentError);
  EXPECT_THROW(parse_calendar("nba=0\n"), ArgumentError);
  EXPECT_THROW(load_calendar("/nonexistent/calendar.txt"), IoError);
}

}  // namespace
