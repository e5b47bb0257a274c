#include "binomials/predictors.hpp"

#include <algorithm>
#include <cmath>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t s = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > s) out.push_back(line.substr(s, i - s));
  }
  return out;
}

}  // namespace

PronouncingDictionary PronouncingDictionary::parse(std::string_view text) {
  PronouncingDictionary d;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto f = fields_of(line);
    const auto ph = f.size() == 3 ? parse_integer(f[1]) : std::nullopt;
    const auto sy = f.size() == 3 ? parse_integer(f[2]) : std::nullopt;
    if (!ph || !sy || *ph < 1 || *sy < 1) {
      throw FormatMismatchError("dictionary line " + std::to_string(lineno) + " is malformed");
    }
    d.add(f[0], Pronunciation{static_cast<int>(*ph), static_cast<int>(*sy)});
  }
  return d;
}

PronouncingDictionary PronouncingDictionary::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

void PronouncingDictionary::add(std::string_view word, Pronunciation p) { entries_[to_lower_ascii(word)] = p; }

const Pronunciation* PronouncingDictionary::find(std::string_view word) const {
  const auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ArgumentError("embedding dimension must be at least 1");
}

EmbeddingTable EmbeddingTable::parse(std::string_view text) {
  const auto lines = split(text, '\n');
  std::size_t idx = 0;
  while (idx < lines.size() && trim(lines[idx]).empty()) ++idx;
  if (idx == lines.size()) throw FormatMismatchError("embedding file is empty");
  const auto header = fields_of(trim(lines[idx]));
  const auto vocab = header.size() == 2 ? parse_integer(header[0]) : std::nullopt;
  const auto dim = header.size() == 2 ? parse_integer(header[1]) : std::nullopt;
  if (!vocab || !dim || *dim < 1 || *vocab < 0) throw FormatMismatchError("embedding header must be `vocab dim`");
  EmbeddingTable t(static_cast<std::size_t>(*dim));
  for (++idx; idx < lines.size(); ++idx) {
    const auto line = trim(lines[idx]);
    if (line.empty()) continue;
    const auto f = fields_of(line);
    if (f.size() != t.dimension_ + 1) {
      throw FormatMismatchError("embedding line " + std::to_string(idx + 1) + " has the wrong dimension");
    }
    std::vector<double> v(t.dimension_);
    for (std::size_t i = 0; i < t.dimension_; ++i) {
      const auto x = parse_real(f[i + 1]);
      if (!x || !std::isfinite(*x)) {
        throw FormatMismatchError("embedding line " + std::to_string(idx + 1) + " has a bad value");
      }
      v[i] = *x;
    }
    t.add(f[0], std::move(v));
  }
  return t;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) { return parse(read_file(path)); }

void EmbeddingTable::add(std::string_view word, std::vector<double> vector) {
  if (vector.size() != dimension_) throw ArgumentError("embedding vector has the wrong dimension");
  vectors_[to_lower_ascii(word)] = std::move(vector);
}

const std::vector<double>* EmbeddingTable::find(std::string_view word) const {
  const auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::alphabetical: return "alphabetical";
    case Rule::length: return "length";
    case Rule::phonemes: return "phonemes";
    case Rule::syllables: return "syllables";
    case Rule::frequency: return "frequency";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (const Rule r : kAllRules) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::size_t code_point_length(std::string_view word) {
  std::size_t n = 0;
  for (const char c : word) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

std::optional<double> rule_feature(std::string_view word, Rule rule, const PredictorResources& resources) {
  switch (rule) {
    case Rule::alphabetical:
      return word.empty() ? 0.0 : static_cast<double>(static_cast<unsigned char>(word[0]));
    case Rule::length:
      return static_cast<double>(code_point_length(word));
    case Rule::phonemes:
    case Rule::syllables: {
      if (resources.dictionary == nullptr) throw ArgumentError("rule needs a pronouncing dictionary");
      const auto* p = resources.dictionary->find(word);
      if (p == nullptr) return std::nullopt;
      return static_cast<double>(rule == Rule::phonemes ? p->phonemes : p->syllables);
    }
    case Rule::frequency: {
      if (resources.unigrams == nullptr) throw ArgumentError("frequency rule needs unigram counts");
      const auto n = resources.unigrams->get(word);
      if (n == 0) return std::nullopt;
      return static_cast<double>(n);
    }
  }
  return std::nullopt;
}

std::optional<Orientation> rule_predict(const PairKey& pair, Rule rule, const PredictorResources& resources) {
  if (rule == Rule::alphabetical) return Orientation::forward;
  const auto a = rule_feature(pair.first, rule, resources);
  const auto b = rule_feature(pair.second, rule, resources);
  if (!a || !b) return std::nullopt;
  if (*a == *b) return Orientation::forward;
  const bool higher_first = rule == Rule::frequency && resources.frequency_higher_first;
  const bool first_wins = higher_first ? *a > *b : *a < *b;
  return first_wins ? Orientation::forward : Orientation::backward;
}

ScoreCard score(const std::vector<ScoredPair>& predictions) {
  if (predictions.empty()) throw EmptyInputError("no predictions to score");
  ScoreCard card;
  double macro = 0;
  std::uint64_t correct = 0, success_tokens = 0;
  std::size_t successes = 0;
  for (const auto& p : predictions) {
    const std::uint64_t total = p.counts.total();
    if (total == 0) throw UndefinedValueError("scored pair has zero count");
    const std::uint64_t hit = p.prediction == Orientation::forward ? p.counts.forward : p.counts.backward;
    macro += static_cast<double>(hit) / static_cast<double>(total);
    correct += hit;
    card.n_tokens += total;
    if (2 * hit >= total) {
      ++successes;
      success_tokens += total;
    }
  }
  card.n_types = predictions.size();
  card.uo = macro / static_cast<double>(card.n_types);
  card.wo = static_cast<double>(correct) / static_cast<double>(card.n_tokens);
  card.ut = static_cast<double>(successes) / static_cast<double>(card.n_types);
  card.wt = static_cast<double>(success_tokens) / static_cast<double>(card.n_tokens);
  return card;
}

RuleEvaluation evaluate_rule(const PairTable& pairs, Rule rule, const PredictorResources& resources) {
  RuleEvaluation ev;
  ev.rule = rule;
  std::vector<ScoredPair> scored;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() == 0) continue;
    ++ev.total;
    if (const auto o = rule_predict(key, rule, resources)) scored.push_back(ScoredPair{key, t, *o});
  }
  ev.covered = scored.size();
  if (!scored.empty()) ev.card = score(scored);
  return ev;
}

PairTable frozen_subset(const PairTable& pairs, double threshold) {
  PairTable out;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() > 0 && asymmetry(ordinality(t)) >= threshold) out.emplace(key, stats);
  }
  return out;
}

std::vector<RuleEvaluation> frozen_only_eval(const PairTable& pairs, const std::vector<Rule>& rules,
                                             const PredictorResources& resources, double threshold) {
  const auto frozen = frozen_subset(pairs, threshold);
  if (frozen.empty()) throw EmptyInputError("no frozen pairs at this threshold");
  std::vector<RuleEvaluation> out;
  for (const Rule r : rules) out.push_back(evaluate_rule(frozen, r, resources));
  return out;
}

PairedResult paired_asymmetry_predict(const PairTable& pairs, Rule rule, const PredictorResources& resources,
                                      std::size_t k) {
  struct Item {
    double asym;
    std::optional<double> diff;
  };
  std::vector<Item> items;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.total() == 0) continue;
    std::optional<double> diff;
    const auto a = rule_feature(key.first, rule, resources);
    const auto b = rule_feature(key.second, rule, resources);
    if (a && b) diff = std::abs(*a - *b);
    items.push_back(Item{asymmetry(ordinality(t)), diff});
  }
  if (items.size() < 2) throw EmptyInputError("paired prediction needs at least two pairs");
  // stable: equal asymmetries keep PairKey order
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.asym > y.asym; });
  PairedResult r;
  r.k = k;
  if (2 * k > items.size()) {
    r.k = items.size() / 2;
    r.truncated = true;
  }
  double credit = 0;
  for (std::size_t h = 0; h < r.k; ++h) {
    for (std::size_t l = items.size() - r.k; l < items.size(); ++l) {
      const auto& hi = items[h];
      const auto& lo = items[l];
      if (hi.asym == lo.asym || !hi.diff || !lo.diff) continue;
      ++r.comparisons;
      if (*hi.diff > *lo.diff) credit += 1.0;
      else if (*hi.diff == *lo.diff) credit += 0.5;
    }
  }
  if (r.comparisons == 0) throw EmptyInputError("no comparable pairs with distinct asymmetry");
  r.accuracy = credit / static_cast<double>(r.comparisons);
  return r;
}

SyllableMatrix syllable_matrix(const PairTable& pairs, const PronouncingDictionary& dictionary) {
  SyllableMatrix m;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    const auto* a = dictionary.find(key.first);
    const auto* b = dictionary.find(key.second);
    if (a == nullptr || b == nullptr || a->syllables > kMaxSyllables || b->syllables > kMaxSyllables) {
      m.skipped_instances += t.total();
      continue;
    }
    m.counts[a->syllables - 1][b->syllables - 1] += t.forward;
    m.counts[b->syllables - 1][a->syllables - 1] += t.backward;
    m.covered_instances += t.total();
  }
  fill_fractions(m);
  return m;
}

void fill_fractions(SyllableMatrix& m) {
  for (int a = 0; a < kMaxSyllables; ++a) {
    m.fraction[a][a] = 1.0;
    for (int b = a + 1; b < kMaxSyllables; ++b) {
      const auto ab = m.counts[a][b];
      const auto ba = m.counts[b][a];
      if (ab + ba == 0) {
        m.fraction[a][b].reset();
        m.fraction[b][a].reset();
        continue;
      }
      // the larger share is divided out and the other taken as its complement;
      // both subtractions are then exact, so the cells complement each other exactly
      if (ab >= ba) {
        const double x = static_cast<double>(ab) / static_cast<double>(ab + ba);
        m.fraction[a][b] = x;
        m.fraction[b][a] = 1.0 - x;
      } else {
        const double x = static_cast<double>(ba) / static_cast<double>(ab + ba);
        m.fraction[b][a] = x;
        m.fraction[a][b] = 1.0 - x;
      }
    }
  }
}

std::string syllable_matrix_csv(const SyllableMatrix& m) {
  std::string out = "first_syllables,second_syllables,count,fraction\n";
  for (int a = 0; a < kMaxSyllables; ++a) {
    for (int b = 0; b < kMaxSyllables; ++b) {
      out += std::to_string(a + 1) + ',' + std::to_string(b + 1) + ',' + std::to_string(m.counts[a][b]) + ',' +
             format_optional(m.fraction[a][b]) + '\n';
    }
  }
  return out;
}

}  // namespace binomials
