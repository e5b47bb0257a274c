#include <algorithm>

#include "binomials/errors.hpp"
#include "binomials/extraction.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

namespace {

std::string join_tokens(const TokenizedText& t, std::size_t begin, std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key += ' ';
    key += t[i];
  }
  return key;
}

std::string normalize_name(std::string_view raw) {
  std::string out;
  bool space = false;
  for (char c : trim(raw)) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

}  // namespace

NameCatalog NameCatalog::parse(std::string_view text, const TokenizerConfig& tokenizer_config) {
  const Tokenizer tokenizer(tokenizer_config);
  NameCatalog catalog;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '|');
    if (fields.size() > 3) throw ArgumentError("catalog line " + std::to_string(lineno) + ": too many '|' fields");
    Entry entry;
    entry.name = normalize_name(fields[0]);
    if (entry.name.empty()) throw ArgumentError("catalog line " + std::to_string(lineno) + ": empty name");
    if (fields.size() > 1) {
      for (auto alias : split(fields[1], ',')) {
        auto a = normalize_name(alias);
        if (!a.empty()) entry.aliases.push_back(std::move(a));
      }
    }
    if (fields.size() > 2) {
      for (auto kv : split(fields[2], ';')) {
        kv = trim(kv);
        if (kv.empty()) continue;
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) {
          throw ArgumentError("catalog line " + std::to_string(lineno) + ": attribute without '='");
        }
        entry.attributes[std::string(trim(kv.substr(0, eq)))] = std::string(trim(kv.substr(eq + 1)));
      }
    }
    catalog.add(std::move(entry), tokenizer);
  }
  return catalog;
}

NameCatalog NameCatalog::load(const std::filesystem::path& path, const TokenizerConfig& tokenizer) {
  return parse(read_file(path), tokenizer);
}

void NameCatalog::index_part(std::string key, std::size_t owner) {
  if (key.empty()) return;
  const std::size_t ntok = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  const std::string first = key.substr(0, key.find(' '));
  auto& mx = max_tokens_by_first_[first];
  mx = std::max(mx, ntok);
  auto& owners = parts_[key];
  if (std::find(owners.begin(), owners.end(), owner) == owners.end()) owners.push_back(owner);
}

void NameCatalog::add(Entry entry, const Tokenizer& tokenizer) {
  if (const auto it = by_name_.find(entry.name); it != by_name_.end()) {
    // Repeated entries merge their aliases and attributes.
    auto& existing = entries_[it->second];
    for (auto& a : entry.aliases) existing.aliases.push_back(std::move(a));
    for (auto& [k, v] : entry.attributes) existing.attributes[k] = std::move(v);
    entry = existing;
  } else {
    by_name_[entry.name] = entries_.size();
    entries_.push_back(entry);
  }
  const std::size_t owner = by_name_[entry.name];
  TokenizedText toks;
  const auto usable = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (separator_of(toks[i])) return false;
    }
    return e > b;
  };
  tokenizer.tokenize(entry.name, toks);
  if (usable(0, toks.size())) index_part(join_tokens(toks, 0, toks.size()), owner);
  // Single-character parts (initials) would match far too much text.
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].size() >= 2 && usable(i, i + 1)) index_part(std::string(toks[i]), owner);
  }
  for (const auto& alias : entry.aliases) {
    tokenizer.tokenize(alias, toks);
    if (usable(0, toks.size())) index_part(join_tokens(toks, 0, toks.size()), owner);
  }
}

const NameCatalog::Entry* NameCatalog::find(std::string_view canonical) const {
  const auto it = by_name_.find(canonical);
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

const std::vector<std::size_t>* NameCatalog::owners(std::string_view part_key) const {
  const auto it = parts_.find(part_key);
  return it == parts_.end() ? nullptr : &it->second;
}

std::string NameCatalog::resolve(std::string_view part_key) const {
  const auto* own = owners(part_key);
  if (!own || own->empty()) return std::string(part_key);
  if (own->size() == 1) return entries_[own->front()].name;
  // Ambiguous: explicit `priority` wins, then the most recent `last_year`.
  for (const char* key : {"priority", "last_year"}) {
    std::optional<double> best;
    std::size_t best_owner = 0;
    bool unique = false;
    for (std::size_t o : *own) {
      const auto it = entries_[o].attributes.find(key);
      if (it == entries_[o].attributes.end()) continue;
      const auto v = parse_real(it->second);
      if (!v) continue;
      if (!best || *v > *best) {
        best = v;
        best_owner = o;
        unique = true;
      } else if (*v == *best) {
        unique = false;
      }
    }
    if (best && unique) return entries_[best_owner].name;
  }
  return std::string(part_key);
}

std::size_t NameCatalog::match_at(const TokenizedText& tokens, std::size_t pos, std::string& key) const {
  const auto first = tokens[pos];
  const auto it = max_tokens_by_first_.find(first);
  if (it == max_tokens_by_first_.end() || separator_of(first)) return 0;
  const std::size_t longest = std::min(it->second, tokens.size() - pos);
  for (std::size_t len = longest; len >= 1; --len) {
    key.clear();
    bool sep = false;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (i > pos) {
        key += ' ';
        sep = sep || separator_of(tokens[i]).has_value();
      }
      key += tokens[i];
    }
    if (!sep && parts_.find(key) != parts_.end()) return len;
  }
  return 0;
}

std::optional<std::string> NameCatalog::attribute(std::string_view canonical, std::string_view key) const {
  const auto* e = find(canonical);
  if (!e) return std::nullopt;
  const auto it = e->attributes.find(std::string(key));
  if (it == e->attributes.end()) return std::nullopt;
  return it->second;
}

std::optional<double> NameCatalog::numeric_attribute(std::string_view canonical, std::string_view key) const {
  const auto v = attribute(canonical, key);
  return v ? parse_real(*v) : std::nullopt;
}

bool NameCatalog::has_attribute_key(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.attributes.count(std::string(key)) > 0; });
}

}  // namespace binomials
