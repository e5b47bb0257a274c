#include "binomials/corpus.hpp"

#include <rapidjson/error/en.h>
#include <rapidjson/reader.h>

#include <algorithm>
#include <chrono>
#include <sstream>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

CorpusRecord RecordView::to_record() const {
  CorpusRecord r;
  r.text = std::string(text);
  r.timestamp = timestamp;
  r.community = std::string(community);
  if (author) r.author = std::string(*author);
  return r;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl" || name == "json") return CorpusFormat::jsonl;
  if (name == "plain" || name == "txt" || name == "text") return CorpusFormat::plain;
  if (name == "csv") return CorpusFormat::csv;
  return std::nullopt;
}

std::string_view to_string(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::jsonl: return "jsonl";
    case CorpusFormat::plain: return "plain";
    case CorpusFormat::csv: return "csv";
  }
  return "?";
}

void check_format_ratio(const ReadSummary& summary, const std::filesystem::path& path) {
  if (summary.skipped * 2 > summary.read + summary.skipped) {
    std::ostringstream msg;
    msg << path.string() << ": " << summary.skipped << " of " << (summary.read + summary.skipped)
        << " lines malformed; format does not match file content";
    throw FormatMismatchError(msg.str());
  }
}

// ---------------------------------------------------------------------------
// BlockReader

BlockReader::BlockReader(const std::filesystem::path& path, bool quote_aware, std::size_t block_bytes,
                         std::uint64_t offset, std::optional<std::uint64_t> length)
    : in_(path, std::ios::binary), quote_aware_(quote_aware), block_bytes_(block_bytes), remaining_(length) {
  if (!in_) throw IoError("cannot open " + path.string());
  if (std::filesystem::is_directory(path)) throw IoError(path.string() + " is a directory");
  if (offset > 0) in_.seekg(static_cast<std::streamoff>(offset));
}

std::size_t BlockReader::boundary(std::string_view data, bool at_eof) const {
  if (at_eof) return data.size();
  if (!quote_aware_) {
    const auto nl = data.rfind('\n');
    return nl == std::string_view::npos ? std::string_view::npos : nl + 1;
  }
  std::size_t last = std::string_view::npos;
  bool in_quotes = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == '"') in_quotes = !in_quotes;
    else if (data[i] == '\n' && !in_quotes) last = i + 1;
  }
  return last;
}

bool BlockReader::next(std::string& block) {
  block.swap(carry_);
  carry_.clear();
  while (true) {
    if (!eof_) {
      std::size_t want = block_bytes_;
      if (remaining_) want = static_cast<std::size_t>(std::min<std::uint64_t>(want, *remaining_));
      const std::size_t old = block.size();
      block.resize(old + want);
      in_.read(block.data() + old, static_cast<std::streamsize>(want));
      const auto got = static_cast<std::size_t>(in_.gcount());
      block.resize(old + got);
      if (remaining_) *remaining_ -= got;
      if (got < want || (remaining_ && *remaining_ == 0)) eof_ = true;
    }
    if (block.empty()) return false;
    const std::size_t b = boundary(block, eof_);
    if (b == std::string_view::npos) continue;
    carry_.assign(block, b, std::string::npos);
    block.resize(b);
    return true;
  }
}

std::string BlockReader::take_first_record() {
  std::string block;
  if (!next(block)) return {};
  std::size_t end = block.size();
  bool in_quotes = false;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (quote_aware_ && block[i] == '"') in_quotes = !in_quotes;
    if (block[i] == '\n' && !in_quotes) {
      end = i;
      break;
    }
  }
  std::string first = block.substr(0, end);
  std::string rest = end < block.size() ? block.substr(end + 1) : std::string();
  carry_ = rest + carry_;
  if (!first.empty() && first.back() == '\r') first.pop_back();
  return first;
}

// ---------------------------------------------------------------------------
// Record parsing

namespace {

enum class JsonField { none, body, created, subreddit, author };

JsonField classify_key(const char* s, rapidjson::SizeType n) {
  const std::string_view k(s, n);
  if (k == "body") return JsonField::body;
  if (k == "created_utc") return JsonField::created;
  if (k == "subreddit") return JsonField::subreddit;
  if (k == "author") return JsonField::author;
  return JsonField::none;
}

struct CommentHandler : rapidjson::BaseReaderHandler<rapidjson::UTF8<>, CommentHandler> {
  int depth = 0;
  JsonField key = JsonField::none;
  std::optional<std::string_view> body;
  std::optional<std::string_view> subreddit;
  std::optional<std::string_view> author;
  std::optional<long long> created;
  bool bad_time = false;

  bool StartObject() {
    ++depth;
    key = JsonField::none;
    return true;
  }
  bool EndObject(rapidjson::SizeType) {
    --depth;
    return true;
  }
  bool StartArray() {
    ++depth;
    key = JsonField::none;
    return true;
  }
  bool EndArray(rapidjson::SizeType) {
    --depth;
    return true;
  }
  bool Key(const char* s, rapidjson::SizeType n, bool) {
    key = depth == 1 ? classify_key(s, n) : JsonField::none;
    return true;
  }
  bool String(const char* s, rapidjson::SizeType n, bool) {
    if (depth == 1) {
      const std::string_view v(s, n);
      switch (key) {
        case JsonField::body: body = v; break;
        case JsonField::subreddit: subreddit = v; break;
        case JsonField::author: author = v; break;
        case JsonField::created:
          if (auto t = parse_integer(v)) created = *t;
          else if (auto d = parse_real(v)) created = static_cast<long long>(*d);
          else bad_time = true;
          break;
        case JsonField::none: break;
      }
    }
    key = JsonField::none;
    return true;
  }
  bool number(long long v) {
    if (depth == 1 && key == JsonField::created) created = v;
    key = JsonField::none;
    return true;
  }
  bool Int(int v) { return number(v); }
  bool Uint(unsigned v) { return number(v); }
  bool Int64(std::int64_t v) { return number(v); }
  bool Uint64(std::uint64_t v) { return number(static_cast<long long>(v)); }
  bool Double(double v) { return number(static_cast<long long>(v)); }
  bool Default() {
    key = JsonField::none;
    return true;
  }
};

bool is_blank(std::string_view s) { return trim(s).empty(); }

// Splits one CSV record into fields, unquoting in place. Returns false on an unterminated quote.
bool split_csv(char* begin, std::size_t len, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t i = 0;
  while (true) {
    char* out = begin + i;
    char* const field_start = out;
    if (i < len && begin[i] == '"') {
      ++i;
      bool closed = false;
      while (i < len) {
        if (begin[i] == '"') {
          if (i + 1 < len && begin[i + 1] == '"') {
            *out++ = '"';
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          *out++ = begin[i++];
        }
      }
      if (!closed) return false;
      fields.emplace_back(field_start, static_cast<std::size_t>(out - field_start));
      while (i < len && begin[i] != ',') ++i;
    } else {
      const std::size_t s = i;
      while (i < len && begin[i] != ',') ++i;
      fields.emplace_back(begin + s, i - s);
    }
    if (i >= len) return true;
    ++i;  // comma
  }
}

std::optional<std::int64_t> parse_csv_time(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (auto v = parse_integer(s)) return *v;
  if (auto d = parse_real(s)) return static_cast<std::int64_t>(*d);
  // ISO date prefix YYYY-MM-DD
  if (s.size() >= 10 && s[4] == '-' && s[7] == '-') {
    auto y = parse_integer(s.substr(0, 4));
    auto m = parse_integer(s.substr(5, 2));
    auto d = parse_integer(s.substr(8, 2));
    if (y && m && d) {
      using namespace std::chrono;
      const year_month_day ymd{year{static_cast<int>(*y)}, month{static_cast<unsigned>(*m)},
                               day{static_cast<unsigned>(*d)}};
      if (ymd.ok()) return sys_days{ymd}.time_since_epoch().count() * 86400LL;
    }
  }
  return std::nullopt;
}

}  // namespace

RecordParser::RecordParser(ReadOptions options, std::string_view csv_header) : options_(std::move(options)) {
  if (options_.format != CorpusFormat::csv) return;
  std::string header(csv_header);
  std::vector<std::string_view> fields;
  if (!split_csv(header.data(), header.size(), fields)) throw FormatMismatchError("unterminated quote in CSV header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto name = trim(fields[i]);
    const int idx = static_cast<int>(i);
    if (name == options_.csv_text_column) csv_text_ = idx;
    if (name == options_.csv_time_column) csv_time_ = idx;
    if (name == options_.csv_community_column) csv_community_ = idx;
    if (name == options_.csv_author_column) csv_author_ = idx;
  }
  if (csv_text_ < 0) {
    throw FormatMismatchError("CSV header has no text column '" + options_.csv_text_column + "'");
  }
}

ParseOutcome RecordParser::parse(char* begin, std::size_t len, RecordView& out) const {
  if (len > 0 && begin[len - 1] == '\r') --len;
  if (is_blank(std::string_view(begin, len))) return ParseOutcome::blank;
  switch (options_.format) {
    case CorpusFormat::jsonl: return parse_jsonl(begin, len, out);
    case CorpusFormat::plain: return parse_plain(begin, len, out);
    case CorpusFormat::csv: return parse_csv(begin, len, out);
  }
  return ParseOutcome::malformed;
}

ParseOutcome RecordParser::parse_jsonl(char* begin, std::size_t len, RecordView& out) const {
  // The in-situ parser stops at NUL; the byte after the record is a newline or the buffer terminator.
  begin[len] = '\0';
  rapidjson::InsituStringStream stream(begin);
  rapidjson::Reader reader;
  CommentHandler handler;
  if (!reader.Parse<rapidjson::kParseInsituFlag>(stream, handler)) return ParseOutcome::malformed;
  if (!handler.body || trim(*handler.body).empty() || handler.bad_time) return ParseOutcome::malformed;
  if (handler.created && *handler.created < 0) return ParseOutcome::malformed;
  out.text = *handler.body;
  out.timestamp = handler.created;
  out.community = handler.subreddit && !handler.subreddit->empty() ? *handler.subreddit
                                                                    : std::string_view(options_.community);
  if (out.community.empty()) return ParseOutcome::malformed;
  out.author = handler.author;
  return ParseOutcome::ok;
}

ParseOutcome RecordParser::parse_plain(char* begin, std::size_t len, RecordView& out) const {
  out.text = trim(std::string_view(begin, len));
  out.timestamp = std::nullopt;
  out.community = options_.community;
  out.author = std::nullopt;
  if (out.community.empty()) return ParseOutcome::malformed;
  return ParseOutcome::ok;
}

ParseOutcome RecordParser::parse_csv(char* begin, std::size_t len, RecordView& out) const {
  thread_local std::vector<std::string_view> fields;
  if (!split_csv(begin, len, fields)) return ParseOutcome::malformed;
  const auto field = [&](int idx) -> std::optional<std::string_view> {
    if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return std::nullopt;
    return fields[static_cast<std::size_t>(idx)];
  };
  const auto text = field(csv_text_);
  if (!text || trim(*text).empty()) return ParseOutcome::malformed;
  out.text = *text;
  out.timestamp = std::nullopt;
  if (const auto t = field(csv_time_); t && !trim(*t).empty()) {
    out.timestamp = parse_csv_time(*t);
    if (!out.timestamp || *out.timestamp < 0) return ParseOutcome::malformed;
  }
  const auto community = field(csv_community_);
  out.community = community && !trim(*community).empty() ? trim(*community) : std::string_view(options_.community);
  if (out.community.empty()) return ParseOutcome::malformed;
  out.author = std::nullopt;
  if (const auto a = field(csv_author_); a && !a->empty()) out.author = *a;
  return ParseOutcome::ok;
}

// ---------------------------------------------------------------------------
// CorpusReader

CorpusReader::CorpusReader(const std::filesystem::path& path, ReadOptions options)
    : path_(path), blocks_(path, options.format == CorpusFormat::csv, 1u << 20) {
  std::string header;
  if (options.format == CorpusFormat::csv) {
    header = blocks_.take_first_record();
    if (header.empty()) {
      done_ = true;
      return;
    }
  }
  parser_.emplace(std::move(options), header);
}

bool CorpusReader::refill() {
  pending_.clear();
  pending_pos_ = 0;
  while (pending_.empty()) {
    if (!blocks_.next(block_)) return false;
    const bool quoted = parser_->options().format == CorpusFormat::csv;
    for_each_record(block_, quoted, [&](char* b, std::size_t n) {
      RecordView view;
      switch (parser_->parse(b, n, view)) {
        case ParseOutcome::ok:
          pending_.push_back(view.to_record());
          ++summary_.read;
          break;
        case ParseOutcome::malformed: ++summary_.skipped; break;
        case ParseOutcome::blank: break;
      }
    });
  }
  return true;
}

std::optional<CorpusRecord> CorpusReader::next() {
  if (done_) return std::nullopt;
  if (pending_pos_ >= pending_.size() && !refill()) {
    done_ = true;
    check_format_ratio(summary_, path_);
    return std::nullopt;
  }
  return std::move(pending_[pending_pos_++]);
}

std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path, const ReadOptions& options,
                                      ReadSummary* summary) {
  CorpusReader reader(path, options);
  std::vector<CorpusRecord> records;
  while (auto r = reader.next()) records.push_back(std::move(*r));
  if (summary) *summary = reader.summary();
  return records;
}

// ---------------------------------------------------------------------------
// Seasons

int SeasonCalendar::start_month(std::string_view community) const {
  const auto it = overrides.find(community);
  return it == overrides.end() ? default_start_month : it->second;
}

void SeasonCalendar::validate() const {
  const auto check = [](std::string_view who, int m) {
    if (m < 1 || m > 12) {
      throw ArgumentError("start month for '" + std::string(who) + "' must be 1-12, got " + std::to_string(m));
    }
  };
  check("*", default_start_month);
  for (const auto& [community, m] : overrides) check(community, m);
}

SeasonCalendar default_calendar() {
  SeasonCalendar cal;
  cal.overrides = {{"nfl", 5},          {"nba", 8},         {"politics", 2},
                   {"Conservative", 2}, {"Libertarian", 2}, {"The_Donald", 2}};
  return cal;
}

SeasonCalendar parse_calendar(std::string_view text) {
  SeasonCalendar cal;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto month = eq == std::string_view::npos ? std::nullopt : parse_integer(line.substr(eq + 1));
    const auto community = eq == std::string_view::npos ? std::string_view() : trim(line.substr(0, eq));
    if (!month || community.empty()) {
      throw ArgumentError("calendar line " + std::to_string(lineno) + ": expected community=month");
    }
    if (community == "*") cal.default_start_month = static_cast<int>(*month);
    else cal.overrides[std::string(community)] = static_cast<int>(*month);
  }
  cal.validate();
  return cal;
}

SeasonCalendar load_calendar(const std::filesystem::path& path) { return parse_calendar(read_file(path)); }

std::string serialize_calendar(const SeasonCalendar& calendar) {
  std::string out = "*=" + std::to_string(calendar.default_start_month) + "\n";
  for (const auto& [community, m] : calendar.overrides) out += community + "=" + std::to_string(m) + "\n";
  return out;
}

std::pair<int, unsigned> utc_year_month(std::int64_t timestamp) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(sys_seconds{seconds{timestamp}})};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

int season_year_of(std::string_view community, std::optional<std::int64_t> timestamp,
                   const SeasonCalendar& calendar) {
  if (!timestamp) return kUndatedSeason;
  const auto [y, m] = utc_year_month(*timestamp);
  return static_cast<int>(m) >= calendar.start_month(community) ? y : y - 1;
}

SeasonKey assign_season(std::string_view community, std::optional<std::int64_t> timestamp,
                        const SeasonCalendar& calendar) {
  return SeasonKey{std::string(community), season_year_of(community, timestamp, calendar)};
}

}  // namespace binomials
