#include "binomials/proper_nouns.hpp"

#include <algorithm>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

HomeMap parse_home_map(std::string_view text) {
  HomeMap m;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty() || trim(line.substr(eq + 1)).empty()) {
      throw ArgumentError("home map line " + std::to_string(lineno) + " must be community=entity");
    }
    m[std::string(trim(line.substr(0, eq)))] = to_lower_ascii(trim(line.substr(eq + 1)));
  }
  return m;
}

HomeMap load_home_map(const std::filesystem::path& path) { return parse_home_map(read_file(path)); }

ProximityResult proximity_from_counts(std::uint64_t home_first, std::uint64_t home_second) {
  if (home_first + home_second == 0) throw EmptyInputError("no lists contain the home entity");
  ProximityResult r;
  r.home_first = home_first;
  r.home_second = home_second;
  r.fraction_first = static_cast<double>(home_first) / static_cast<double>(home_first + home_second);
  r.fraction_second = static_cast<double>(home_second) / static_cast<double>(home_first + home_second);
  return r;
}

ProximityResult proximity_counts(const ListCounts& lists, const HomeContext& context) {
  std::uint64_t first = 0, second = 0;
  for (const auto& [key, n] : lists.entries()) {
    if (key.method != Method::names_only || key.items.size() != 2 || key.slice.community != context.community) {
      continue;
    }
    if (key.items[0] == context.home_entity) first += n;
    else if (key.items[1] == context.home_entity) second += n;
  }
  return proximity_from_counts(first, second);
}

CrossCommunityMatrix cross_community_matrix(const ListCounts& lists, const HomeMap& homes, std::uint64_t floor) {
  CrossCommunityMatrix m;
  for (const auto& [c, e] : homes) m.communities.push_back(c);
  const std::size_t k = m.communities.size();
  std::vector<std::vector<std::uint64_t>> first(k, std::vector<std::uint64_t>(k, 0));
  std::vector<std::vector<std::uint64_t>> total(k, std::vector<std::uint64_t>(k, 0));
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < k; ++i) index[m.communities[i]] = i;
  for (const auto& [key, n] : lists.entries()) {
    if (key.method != Method::names_only || key.items.size() != 2) continue;
    const auto row = index.find(key.slice.community);
    if (row == index.end()) continue;
    const std::string& home = homes.find(key.slice.community)->second;
    const bool home_first = key.items[0] == home;
    if (!home_first && key.items[1] != home) continue;
    const std::string& other = home_first ? key.items[1] : key.items[0];
    for (std::size_t col = 0; col < k; ++col) {
      if (col == row->second || homes.find(m.communities[col])->second != other) continue;
      total[row->second][col] += n;
      if (home_first) first[row->second][col] += n;
    }
  }
  m.cells.assign(k, std::vector<MatrixCell>(k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (r == c) continue;
      m.cells[r][c].n = total[r][c];
      if (total[r][c] > 0 && total[r][c] >= floor) {
        m.cells[r][c].score = static_cast<double>(first[r][c]) / static_cast<double>(total[r][c]);
      }
    }
  }
  return m;
}

std::string cross_community_csv(const CrossCommunityMatrix& m) {
  std::string out = "community,other,n,score\n";
  for (std::size_t r = 0; r < m.communities.size(); ++r) {
    for (std::size_t c = 0; c < m.communities.size(); ++c) {
      if (r == c) continue;
      out += csv_field(m.communities[r]) + ',' + csv_field(m.communities[c]) + ',' + std::to_string(m.cells[r][c].n) +
             ',' + format_optional(m.cells[r][c].score) + '\n';
    }
  }
  return out;
}

std::uint64_t PartyOrderCounts::counted() const {
  std::uint64_t t = 0;
  for (const auto& [k, n] : counts) t += n;
  return t;
}

PartyOrderCounts party_order_counts(const ListCounts& lists, const NameCatalog& catalog, std::string_view party_key,
                                    std::optional<std::string_view> community) {
  PartyOrderCounts p;
  for (const auto& [key, n] : lists.entries()) {
    if (key.method != Method::names_only || key.items.size() != 2) continue;
    if (community && key.slice.community != *community) continue;
    p.qualifying += n;
    const auto a = catalog.attribute(key.items[0], party_key);
    const auto b = catalog.attribute(key.items[1], party_key);
    if (!a || !b) {
      p.missing_party += n;
      continue;
    }
    p.counts[{*a, *b}] += n;
  }
  return p;
}

std::string party_order_csv(const PartyOrderCounts& p) {
  std::string out = "first_party,second_party,count\n";
  for (const auto& [k, n] : p.counts) out += csv_field(k.first) + ',' + csv_field(k.second) + ',' + std::to_string(n) + '\n';
  out += "# qualifying," + std::to_string(p.qualifying) + ",missing_party," + std::to_string(p.missing_party) + '\n';
  return out;
}

void EntityMetadata::set(std::string_view entity, std::string_view key, double value) {
  derived_[std::string(entity)][std::string(key)] = value;
}

std::optional<double> EntityMetadata::numeric(std::string_view entity, std::string_view key) const {
  if (const auto it = derived_.find(entity); it != derived_.end()) {
    if (const auto jt = it->second.find(key); jt != it->second.end()) return jt->second;
  }
  return catalog_->numeric_attribute(entity, key);
}

bool EntityMetadata::has_key(std::string_view key) const {
  for (const auto& [entity, attrs] : derived_) {
    if (attrs.find(key) != attrs.end()) return true;
  }
  return catalog_->has_attribute_key(key);
}

void add_team_mentions(EntityMetadata& metadata, const NameCatalog& catalog, const WordCounts& mentions,
                       const WordCounts& unigrams) {
  for (const auto& e : catalog.entries()) {
    const auto it = e.attributes.find("team");
    if (it == e.attributes.end()) continue;
    const std::string team = to_lower_ascii(it->second);
    // a catalogued team resolves through its mentions; otherwise the raw word count
    const std::uint64_t m = mentions.get(team);
    metadata.set(e.name, "team_mentions", static_cast<double>(m > 0 ? m : unigrams.get(team)));
  }
}

std::optional<Orientation> metadata_predict(const PairKey& pair, std::string_view key, bool higher_first,
                                            const EntityMetadata& metadata) {
  if (!metadata.has_key(key)) throw ArgumentError("unknown attribute key: " + std::string(key));
  const auto a = metadata.numeric(pair.first, key);
  const auto b = metadata.numeric(pair.second, key);
  if (!a || !b || *a == *b) return std::nullopt;
  const bool first_wins = higher_first ? *a > *b : *a < *b;
  return first_wins ? Orientation::forward : Orientation::backward;
}

RuleEvaluation evaluate_metadata(const PairTable& pairs, std::string_view key, bool higher_first,
                                 const EntityMetadata& metadata) {
  RuleEvaluation ev;
  std::vector<ScoredPair> scored;
  for (const auto& [pair, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() == 0) continue;
    ++ev.total;
    if (const auto o = metadata_predict(pair, key, higher_first, metadata)) scored.push_back(ScoredPair{pair, t, *o});
  }
  ev.covered = scored.size();
  if (!scored.empty()) ev.card = score(scored);
  return ev;
}

StringSet parse_word_list(std::string_view text) {
  StringSet s;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    s.insert(to_lower_ascii(line));
  }
  return s;
}

StringSet load_word_list(const std::filesystem::path& path) { return parse_word_list(read_file(path)); }

namespace {

bool is_english(std::string_view entity, const StringSet& english) {
  for (auto part : split(entity, ' ')) {
    if (!part.empty() && english.contains(part)) return true;
  }
  return false;
}

std::map<std::string, std::uint64_t, std::less<>> list_instances_by_entity(const ListCounts& lists) {
  std::map<std::string, std::uint64_t, std::less<>> out;
  for (const auto& [key, n] : lists.entries()) {
    if (key.method != Method::names_only) continue;
    for (const auto& item : key.items) out[item] += n;
  }
  return out;
}

}  // namespace

std::optional<double> mention_ratio(std::string_view entity, const ListCounts& lists, const WordCounts& mentions,
                                    const StringSet& english, std::uint64_t floor) {
  const std::uint64_t m = mentions.get(entity);
  if (m == 0 || m < floor || is_english(entity, english)) return std::nullopt;
  const auto by_entity = list_instances_by_entity(lists);
  const auto it = by_entity.find(entity);
  const std::uint64_t l = it == by_entity.end() ? 0 : it->second;
  return static_cast<double>(l) / static_cast<double>(m);
}

MentionRatioReport mention_ratios(const ListCounts& lists, const WordCounts& mentions, const StringSet& english,
                                  std::uint64_t floor) {
  MentionRatioReport r;
  const auto by_entity = list_instances_by_entity(lists);
  double sum = 0;
  for (const auto& [entity, m] : mentions.entries()) {
    if (is_english(entity, english)) {
      ++r.excluded_english;
      continue;
    }
    if (m == 0 || m < floor) {
      ++r.excluded_floor;
      continue;
    }
    const auto it = by_entity.find(entity);
    MentionRatio row{entity, it == by_entity.end() ? 0 : it->second, m, 0};
    row.ratio = static_cast<double>(row.list_instances) / static_cast<double>(m);
    sum += row.ratio;
    r.rows.push_back(std::move(row));
  }
  if (!r.rows.empty()) r.average = sum / static_cast<double>(r.rows.size());
  return r;
}

std::string mention_ratio_csv(const MentionRatioReport& r) {
  std::string out = "entity,list_instances,mentions,ratio\n";
  for (const auto& row : r.rows) {
    out += csv_field(row.entity) + ',' + std::to_string(row.list_instances) + ',' + std::to_string(row.mentions) +
           ',' + format_real(row.ratio) + '\n';
  }
  return out;
}

}  // namespace binomials
