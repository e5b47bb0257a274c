#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace binomials {

/// One document or comment. `timestamp` is absent for undated sources.
struct CorpusRecord {
  std::string text;
  std::optional<std::int64_t> timestamp;
  std::string community;
  std::optional<std::string> author;
};

/// Non-owning view of a record, pointing into a parser buffer.
struct RecordView {
  std::string_view text;
  std::optional<std::int64_t> timestamp;
  std::string_view community;
  std::optional<std::string_view> author;

  CorpusRecord to_record() const;
};

enum class CorpusFormat { jsonl, plain, csv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat format);

struct ReadOptions {
  CorpusFormat format = CorpusFormat::jsonl;
  /// Community for plain text, and the fallback when a jsonl/csv row has none.
  std::string community;
  std::string csv_text_column = "text";
  std::string csv_time_column = "timestamp";
  std::string csv_community_column = "community";
  std::string csv_author_column = "author";
};

struct ReadSummary {
  std::size_t read = 0;
  std::size_t skipped = 0;

  ReadSummary& operator+=(const ReadSummary& other) {
    read += other.read;
    skipped += other.skipped;
    return *this;
  }
  bool operator==(const ReadSummary&) const = default;
};

/// Throws FormatMismatchError when more than half of the non-blank lines were malformed.
void check_format_ratio(const ReadSummary& summary, const std::filesystem::path& path);

/// Reads a file in blocks that always end on a record boundary.
/// CSV mode treats newlines inside quoted fields as part of the record.
class BlockReader {
 public:
  /// Reads `length` bytes starting at `offset` (to end of file when length is absent).
  BlockReader(const std::filesystem::path& path, bool quote_aware, std::size_t block_bytes = 8u << 20,
              std::uint64_t offset = 0, std::optional<std::uint64_t> length = std::nullopt);

  /// Replaces `block` with the next run of whole records; false at end of file.
  bool next(std::string& block);

  /// Reads and returns the first record (the CSV header). Empty at end of file.
  std::string take_first_record();

 private:
  std::size_t boundary(std::string_view data, bool at_eof) const;

  std::ifstream in_;
  bool quote_aware_;
  std::size_t block_bytes_;
  std::optional<std::uint64_t> remaining_;
  std::string carry_;
  bool eof_ = false;
};

/// Splits a block into records, calling fn(char* begin, size_t len) for each.
/// The record bytes may be modified in place by the callee.
template <typename Fn>
void for_each_record(std::string& block, bool quote_aware, Fn&& fn) {
  std::size_t start = 0;
  const std::size_t n = block.size();
  bool in_quotes = false;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = block[i];
    if (quote_aware && c == '"') in_quotes = !in_quotes;
    if (c == '\n' && !in_quotes) {
      fn(block.data() + start, i - start);
      start = i + 1;
    }
  }
  if (start < n) fn(block.data() + start, n - start);
}

enum class ParseOutcome { ok, blank, malformed };

/// Parses single records of one format into RecordViews.
class RecordParser {
 public:
  /// For CSV, `csv_header` is the header record; missing text column throws FormatMismatchError.
  explicit RecordParser(ReadOptions options, std::string_view csv_header = {});

  /// Parses in place: JSON strings are unescaped inside the given buffer.
  ParseOutcome parse(char* begin, std::size_t len, RecordView& out) const;

  const ReadOptions& options() const { return options_; }

 private:
  ParseOutcome parse_jsonl(char* begin, std::size_t len, RecordView& out) const;
  ParseOutcome parse_plain(char* begin, std::size_t len, RecordView& out) const;
  ParseOutcome parse_csv(char* begin, std::size_t len, RecordView& out) const;

  ReadOptions options_;
  int csv_text_ = -1;
  int csv_time_ = -1;
  int csv_community_ = -1;
  int csv_author_ = -1;
};

/// Streams CorpusRecords from one file in file order.
class CorpusReader {
 public:
  /// Throws IoError when the path cannot be opened.
  CorpusReader(const std::filesystem::path& path, ReadOptions options);

  /// Next record, or nullopt at end of file. At end of file the malformed
  /// ratio is checked and FormatMismatchError thrown when it exceeds 50%.
  std::optional<CorpusRecord> next();

  const ReadSummary& summary() const { return summary_; }

 private:
  bool refill();

  std::filesystem::path path_;
  BlockReader blocks_;
  std::optional<RecordParser> parser_;
  std::string block_;
  std::vector<CorpusRecord> pending_;
  std::size_t pending_pos_ = 0;
  ReadSummary summary_;
  bool done_ = false;
};

/// Convenience: reads a whole file. `summary` receives (read, skipped).
std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path, const ReadOptions& options,
                                      ReadSummary* summary = nullptr);

// ---------------------------------------------------------------------------
// Season binning

/// Season year used for records without a timestamp.
inline constexpr int kUndatedSeason = std::numeric_limits<int>::min();

struct SeasonKey {
  std::string community;
  int season_year = kUndatedSeason;

  bool dated() const { return season_year != kUndatedSeason; }
  auto operator<=>(const SeasonKey&) const = default;
};

struct SeasonCalendar {
  int default_start_month = 1;
  std::map<std::string, int, std::less<>> overrides;

  int start_month(std::string_view community) const;
  /// Throws ArgumentError when a month is outside 1-12.
  void validate() const;
};

/// The calendar used when none is configured: nfl=5, nba=8, politics subreddits=2.
SeasonCalendar default_calendar();

/// Parses `community=month` lines; `*=M` sets the default month.
SeasonCalendar parse_calendar(std::string_view text);
SeasonCalendar load_calendar(const std::filesystem::path& path);
std::string serialize_calendar(const SeasonCalendar& calendar);

/// Civil (year, month) of a UTC epoch-seconds timestamp.
std::pair<int, unsigned> utc_year_month(std::int64_t timestamp);

/// Season year of a dated record: the calendar year when the month is at or
/// after the community's start month, else the year before.
int season_year_of(std::string_view community, std::optional<std::int64_t> timestamp,
                   const SeasonCalendar& calendar);

SeasonKey assign_season(std::string_view community, std::optional<std::int64_t> timestamp,
                        const SeasonCalendar& calendar);

inline SeasonKey assign_season(const CorpusRecord& record, const SeasonCalendar& calendar) {
  return assign_season(record.community, record.timestamp, calendar);
}

}  // namespace binomials
