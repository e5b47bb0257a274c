#include "binomials/counts.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

namespace {

// Flat key whose byte order is the (method, items, community, season) order:
//   method, item \x02 item ..., \x01 community \x01 season as 8 hex digits (biased)
// Tokens and community labels never contain bytes below \x03.
constexpr char kEnd = '\x01';
constexpr char kItemSep = '\x02';

void append_int(std::string& s, long long v) {
  char buf[24];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, r.ptr);
}

void append_season(std::string& s, int season) {
  static constexpr char hex[] = "0123456789abcdef";
  const auto biased = static_cast<std::uint32_t>(static_cast<std::int64_t>(season) + 0x80000000LL);
  for (int shift = 28; shift >= 0; shift -= 4) s += hex[(biased >> shift) & 0xf];
}

int parse_season(std::string_view hex8) {
  std::uint32_t v = 0;
  for (const char c : hex8) v = (v << 4) | static_cast<std::uint32_t>(c <= '9' ? c - '0' : c - 'a' + 10);
  return static_cast<int>(static_cast<std::int64_t>(v) - 0x80000000LL);
}

ListView view_of(std::string_view key, std::uint64_t n) {
  ListView out;
  out.raw = key;
  out.count = n;
  out.method = static_cast<Method>(key[0] - '0');
  const auto f1 = key.find(kEnd, 1);
  out.items = split(key.substr(1, f1 - 1), kItemSep);
  out.community = key.substr(f1 + 1, key.size() - f1 - 10);
  out.season_year = parse_season(key.substr(key.size() - 8));
  return out;
}

// First 16 bytes, big-endian, zero padded: compares like the key itself.
std::pair<std::uint64_t, std::uint64_t> prefix_of(std::string_view key) {
  std::uint64_t p[2] = {0, 0};
  for (std::size_t i = 0; i < 16 && i < key.size(); ++i) {
    p[i / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(key[i])) << (8 * (7 - i % 8));
  }
  return {p[0], p[1]};
}

std::string clean_field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

void ListCounts::add(Method method, std::string_view community, int season_year,
                     std::span<const std::string_view> items, std::uint64_t n) {
  thread_local std::string key;
  key.clear();
  key += static_cast<char>('0' + static_cast<int>(method));
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) key += kItemSep;
    key += items[i];
  }
  key += kEnd;
  key += community;
  key += kEnd;
  append_season(key, season_year);
  if (auto it = counts_.find(std::string_view(key)); it != counts_.end()) {
    it->second += n;
  } else {
    counts_.emplace(key, n);
  }
}

void ListCounts::add(const ListInstance& instance, std::uint64_t n) {
  std::vector<std::string_view> items(instance.items.begin(), instance.items.end());
  add(instance.method, instance.slice.community, instance.slice.season_year, items, n);
}

void ListCounts::add(const ListKey& key, std::uint64_t n) {
  std::vector<std::string_view> items(key.items.begin(), key.items.end());
  add(key.method, key.slice.community, key.slice.season_year, items, n);
}

void ListCounts::merge(const ListCounts& other) {
  for (const auto& [k, v] : other.counts_) counts_[k] += v;
}

std::uint64_t ListCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : counts_) t += v;
  return t;
}

std::vector<std::pair<std::string_view, std::uint64_t>> ListCounts::sorted_keys() const {
  struct Slot {
    std::pair<std::uint64_t, std::uint64_t> prefix;
    std::string_view key;
    std::uint64_t n;
  };
  std::vector<Slot> slots;
  slots.reserve(counts_.size());
  for (const auto& [k, v] : counts_) slots.push_back(Slot{prefix_of(k), k, v});
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.key < b.key;
  });
  std::vector<std::pair<std::string_view, std::uint64_t>> out;
  out.reserve(slots.size());
  for (const auto& s : slots) out.emplace_back(s.key, s.n);
  return out;
}

std::vector<ListView> ListCounts::views(bool sorted) const {
  std::vector<ListView> out;
  out.reserve(counts_.size());
  if (sorted) {
    for (const auto& [k, n] : sorted_keys()) out.push_back(view_of(k, n));
  } else {
    for (const auto& [k, n] : counts_) out.push_back(view_of(k, n));
  }
  return out;
}

std::vector<std::pair<ListKey, std::uint64_t>> ListCounts::entries() const {
  std::vector<std::pair<ListKey, std::uint64_t>> out;
  out.reserve(counts_.size());
  for (const auto& v : views()) {
    ListKey key;
    key.method = v.method;
    key.items.assign(v.items.begin(), v.items.end());
    key.slice = SeasonKey{std::string(v.community), v.season_year};
    out.emplace_back(std::move(key), v.count);
  }
  return out;
}

std::string ListCounts::to_tsv() const {
  const auto keys = sorted_keys();
  std::string out = "# method\tcommunity\tseason\tcount\titems...\n";
  out.reserve(out.size() + keys.size() * 48);
  const auto put_clean = [&out](std::string_view s) {
    const auto start = out.size();
    out += s;
    for (auto i = start; i < out.size(); ++i) {
      char& c = out[i];
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
  };
  for (const auto& [key, n] : keys) {
    const auto f1 = key.find(kEnd, 1);
    out += to_string(static_cast<Method>(key[0] - '0'));
    out += '\t';
    put_clean(key.substr(f1 + 1, key.size() - f1 - 10));
    out += '\t';
    const int season = parse_season(key.substr(key.size() - 8));
    if (season != kUndatedSeason) append_int(out, season);
    else out += '-';
    out += '\t';
    append_int(out, static_cast<long long>(n));
    // items: kItemSep becomes a tab
    out += '\t';
    const auto start = out.size();
    put_clean(key.substr(1, f1 - 1));
    for (auto i = start; i < out.size(); ++i) {
      if (out[i] == kItemSep) out[i] = '\t';
    }
    out += '\n';
  }
  return out;
}

ListCounts ListCounts::from_tsv(std::string_view text) {
  ListCounts counts;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line, '\t');
    const auto bad = [&] { return FormatMismatchError("count table line " + std::to_string(lineno) + " is malformed"); };
    if (f.size() < 6) throw bad();
    const auto method = parse_method(f[0]);
    const auto count = parse_integer(f[3]);
    std::optional<long long> season = f[2] == "-" ? std::optional<long long>(kUndatedSeason) : parse_integer(f[2]);
    if (!method || !count || !season || *count < 0) throw bad();
    std::vector<std::string_view> items(f.begin() + 4, f.end());
    counts.add(*method, f[1], static_cast<int>(*season), items, static_cast<std::uint64_t>(*count));
  }
  return counts;
}

ListCounts filter_min_count(const ListCounts& counts, std::uint64_t k) {
  if (k == 0) throw ArgumentError("minimum count must be at least 1");
  const auto views = counts.views(false);
  // method byte + sorted items: the unordered item set per method
  std::vector<std::string> set_keys;
  set_keys.reserve(views.size());
  StringMap<std::uint64_t> totals;
  std::vector<std::string_view> sorted;
  for (const auto& v : views) {
    sorted = v.items;
    std::sort(sorted.begin(), sorted.end());
    std::string key(1, v.raw[0]);
    for (const auto item : sorted) {
      key += kItemSep;
      key += item;
    }
    totals[key] += v.count;
    set_keys.push_back(std::move(key));
  }
  ListCounts out;
  for (std::size_t i = 0; i < views.size(); ++i) {
    if (totals.find(set_keys[i])->second >= k) out.counts_.emplace(views[i].raw, views[i].count);
  }
  return out;
}

ListCounts filter_min_count(const std::vector<ListInstance>& instances, std::uint64_t k) {
  if (k == 0) throw ArgumentError("minimum count must be at least 1");
  ListCounts all;
  for (const auto& inst : instances) all.add(inst);
  return filter_min_count(all, k);
}

void WordCounts::add(std::string_view word, std::uint64_t n) {
  if (auto it = counts_.find(word); it != counts_.end()) {
    it->second += n;
  } else {
    counts_.emplace(std::string(word), n);
  }
}

void WordCounts::merge(const WordCounts& other) {
  for (const auto& [k, v] : other.counts_) counts_[k] += v;
}

std::uint64_t WordCounts::get(std::string_view word) const {
  const auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> WordCounts::entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts_.begin(), counts_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string WordCounts::to_tsv() const {
  std::string out = "# word\tcount\n";
  for (const auto& [w, n] : entries()) {
    out += clean_field(w);
    out += '\t';
    append_int(out, static_cast<long long>(n));
    out += '\n';
  }
  return out;
}

WordCounts WordCounts::from_tsv(std::string_view text) {
  WordCounts counts;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.rfind('\t');
    const auto n = tab == std::string_view::npos ? std::nullopt : parse_integer(line.substr(tab + 1));
    if (!n || *n < 0) throw FormatMismatchError("word count line " + std::to_string(lineno) + " is malformed");
    counts.add(line.substr(0, tab), static_cast<std::uint64_t>(*n));
  }
  return counts;
}

std::vector<std::tuple<Method, std::size_t, std::uint64_t>> length_histogram(const ListCounts& counts) {
  std::map<std::pair<Method, std::size_t>, std::uint64_t> h;
  for (const auto& [key, n] : counts.counts_) {
    const std::string_view items = std::string_view(key).substr(1, key.find(kEnd, 1) - 1);
    const auto length = static_cast<std::size_t>(std::count(items.begin(), items.end(), kItemSep)) + 1;
    h[{static_cast<Method>(key[0] - '0'), length}] += n;
  }
  std::vector<std::tuple<Method, std::size_t, std::uint64_t>> out;
  for (const auto& [k, n] : h) out.emplace_back(k.first, k.second, n);
  return out;
}

}  // namespace binomials
