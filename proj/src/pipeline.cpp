#include "binomials/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include <json.hpp>

#include "binomials/corpus.hpp"
#include "binomials/counts.hpp"
#include "binomials/errors.hpp"
#include "binomials/extract.hpp"
#include "binomials/extraction.hpp"
#include "binomials/graph.hpp"
#include "binomials/logistic.hpp"
#include "binomials/metrics.hpp"
#include "binomials/multinomials.hpp"
#include "binomials/null_model.hpp"
#include "binomials/predictors.hpp"
#include "binomials/proper_nouns.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

fs::path default_data_dir() {
  if (const char* env = std::getenv("BINOMIALS_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return BINOMIALS_DEFAULT_DATA_DIR;
}

namespace {

bool is_subcommand(std::string_view s) {
  return std::find(std::begin(kSubcommands), std::end(kSubcommands), s) != std::end(kSubcommands);
}

std::optional<std::size_t> parse_resamples(std::string_view s) {
  if (s == "auto" || s == "cells") return 0;
  const auto n = parse_integer(s);
  if (!n || *n < 1) return std::nullopt;
  return static_cast<std::size_t>(*n);
}

}  // namespace

std::vector<std::string> validate(const RunConfig& c, std::string_view subcommand) {
  std::vector<std::string> problems;
  const auto need_file = [&](const std::string& path, std::string_view what) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) problems.push_back(std::string(what) + " not found: " + path);
  };
  if (!is_subcommand(subcommand)) problems.push_back("unknown subcommand: " + std::string(subcommand));
  const auto format = parse_corpus_format(c.format);
  if (!format) problems.push_back("unknown corpus format: " + c.format);
  if (c.counts.empty()) {
    if (c.corpus.empty()) problems.push_back("no corpus given (or --counts for downstream stages)");
    for (const auto& p : c.corpus) need_file(p, "corpus file");
    if (format == CorpusFormat::plain && c.community.empty()) {
      problems.push_back("plain-text corpora need --community");
    }
  } else {
    if (subcommand == "extract" || subcommand == "report") {
      problems.push_back(std::string(subcommand) + " reads a corpus; --counts is for downstream stages");
    }
    need_file((fs::path(c.counts) / "counts.tsv").string(), "count table");
  }
  if (!c.calendar.empty()) need_file(c.calendar, "calendar");
  if (!c.stopwords.empty()) need_file(c.stopwords, "stop-word list");
  for (const auto& p : c.catalogs) need_file(p, "name catalog");
  if (!c.home_map.empty()) need_file(c.home_map, "home map");
  if (!c.dictionary.empty()) need_file(c.dictionary, "pronouncing dictionary");
  if (!c.embeddings.empty()) need_file(c.embeddings, "embedding file");
  if (!c.english_words.empty()) need_file(c.english_words, "English word list");
  if (subcommand == "names" && c.catalogs.empty()) problems.push_back("names needs at least one --catalog");
  if (c.min_count < 1) problems.push_back("min-count must be at least 1");
  if (c.slice_floor < 1) problems.push_back("slice-floor must be at least 1");
  if (c.edge_floor < 1) problems.push_back("edge-floor must be at least 1");
  if (!(c.frozen_threshold > 0.5 && c.frozen_threshold <= 1.0)) problems.push_back("frozen threshold must lie in (0.5, 1]");
  if (!parse_resamples(c.resamples)) problems.push_back("resamples must be auto, cells, or a positive integer");
  if (c.paired_k < 1) problems.push_back("paired-k must be at least 1");
  if (!(c.learning_rate > 0)) problems.push_back("learning rate must be positive");
  if (c.epochs < 1) problems.push_back("epochs must be at least 1");
  if (!(c.l2 >= 0)) problems.push_back("l2 must be non-negative");
  if (!(c.train_fraction > 0 && c.train_fraction <= 1)) problems.push_back("train fraction must lie in (0, 1]");
  if (c.max_cycles < 1) problems.push_back("max-cycles must be at least 1");
  if (c.max_cycle_length < 2) problems.push_back("max-cycle-length must be at least 2");
  if (c.shards < 1) problems.push_back("shards must be at least 1");
  if (c.threads < 0) problems.push_back("threads must be non-negative");
  if (c.out.empty()) problems.push_back("output directory is empty");
  return problems;
}

namespace {

Json config_echo(const RunConfig& c) {
  Json j;
  j["corpus"] = c.corpus;
  j["format"] = c.format;
  j["community"] = c.community;
  j["csv_text_column"] = c.csv_text_column;
  j["csv_time_column"] = c.csv_time_column;
  j["csv_community_column"] = c.csv_community_column;
  j["csv_author_column"] = c.csv_author_column;
  j["calendar"] = c.calendar;
  j["stopwords"] = c.stopwords;
  j["catalogs"] = c.catalogs;
  j["home_map"] = c.home_map;
  j["dictionary"] = c.dictionary;
  j["embeddings"] = c.embeddings;
  j["english_words"] = c.english_words;
  j["counts"] = c.counts;
  j["extended_lists"] = c.extended_lists;
  j["min_count"] = c.min_count;
  j["slice_floor"] = c.slice_floor;
  j["edge_floor"] = c.edge_floor;
  j["frozen_threshold"] = c.frozen_threshold;
  j["seed"] = c.seed;
  j["resamples"] = c.resamples;
  j["frequency_higher_first"] = c.frequency_higher_first;
  j["paired_k"] = c.paired_k;
  j["learning_rate"] = c.learning_rate;
  j["epochs"] = c.epochs;
  j["l2"] = c.l2;
  j["train_fraction"] = c.train_fraction;
  j["party_key"] = c.party_key;
  j["max_cycles"] = c.max_cycles;
  j["max_cycle_length"] = c.max_cycle_length;
  return j;
}

// Writes artifacts and records their digests.
class Manifest {
 public:
  Manifest(fs::path out, std::string subcommand) : out_(std::move(out)), subcommand_(std::move(subcommand)) {}

  void stage(std::string name) { stage_ = std::move(name); }

  void write(const std::string& name, const std::string& content) {
    write_file(out_ / name, content);
    outputs_.push_back(Json{{"name", name}, {"sha256", sha256_hex(content)}, {"subcommand", stage_}});
  }

  void note(const std::string& text) { notes_.push_back(stage_ + ": " + text); }

  void finish(const RunConfig& config, const Json& inputs) {
    Json j;
    j["tool"] = "binomials";
    j["subcommand"] = subcommand_;
    j["config"] = config_echo(config);
    j["inputs"] = inputs;
    j["rng"] = kRngName;
    j["seed"] = config.seed;
    j["outputs"] = outputs_;
    j["notes"] = notes_;
    write_file(out_ / "manifest.json", j.dump(2) + "\n");
  }

 private:
  fs::path out_;
  std::string subcommand_;
  std::string stage_;
  Json outputs_ = Json::array();
  std::vector<std::string> notes_;
};

struct Context {
  const RunConfig& config;
  std::ostream& log;
  Manifest& manifest;
  ExtractResult data;
  std::optional<NameCatalog> catalog;
  std::size_t stopword_count = 0;
  Json inputs;
  std::optional<ListCounts> retained_;

  /// Lists surviving the minimum-count filter, computed on first use.
  const ListCounts& retained() {
    if (!retained_) retained_ = filter_min_count(data.lists, config.min_count);
    return *retained_;
  }
  PairTable pairs(Method m) { return collect_pairs(retained(), m); }
};

NameCatalog load_catalogs(const std::vector<std::string>& paths) {
  std::string text;
  for (const auto& p : paths) {
    text += read_file(p);
    text += '\n';
  }
  return NameCatalog::parse(text);
}

void load_inputs(Context& ctx) {
  const auto& c = ctx.config;
  if (!c.catalogs.empty()) ctx.catalog = load_catalogs(c.catalogs);
  std::optional<StopWordList> stop;
  if (!c.stopwords.empty()) stop = StopWordList::load(c.stopwords);
  ctx.stopword_count = stop ? stop->size() : StopWordList::builtin().size();
  Json digests = Json::array();
  if (!c.counts.empty()) {
    const fs::path dir = c.counts;
    const auto counts_text = read_file(dir / "counts.tsv");
    ctx.data.lists = ListCounts::from_tsv(counts_text);
    digests.push_back(Json{{"path", (dir / "counts.tsv").string()}, {"sha256", sha256_hex(counts_text)}});
    for (const char* name : {"unigrams.tsv", "mentions.tsv"}) {
      std::error_code ec;
      if (!fs::is_regular_file(dir / name, ec)) continue;
      const auto text = read_file(dir / name);
      (std::string_view(name) == "unigrams.tsv" ? ctx.data.unigrams : ctx.data.mentions) = WordCounts::from_tsv(text);
      digests.push_back(Json{{"path", (dir / name).string()}, {"sha256", sha256_hex(text)}});
    }
  } else {
    ExtractConfig ec;
    ec.read.format = *parse_corpus_format(c.format);
    ec.read.community = c.community;
    ec.read.csv_text_column = c.csv_text_column;
    ec.read.csv_time_column = c.csv_time_column;
    ec.read.csv_community_column = c.csv_community_column;
    ec.read.csv_author_column = c.csv_author_column;
    ec.calendar = c.calendar.empty() ? default_calendar() : load_calendar(c.calendar);
    ec.stopwords = stop ? &*stop : &StopWordList::builtin();
    ec.catalog = ctx.catalog ? &*ctx.catalog : nullptr;
    ec.extended_lists = c.extended_lists;
    std::vector<fs::path> paths(c.corpus.begin(), c.corpus.end());
    for (const auto& p : paths) digests.push_back(Json{{"path", p.string()}, {"sha256", sha256_file(p)}});
    ctx.data = extract_files(paths, ec, c.shards);
    ctx.log << "read " << ctx.data.summary.read << " records, skipped " << ctx.data.summary.skipped << "\n";
  }
  ctx.inputs["corpus_digests"] = digests;
  ctx.inputs["stopwords_size"] = ctx.stopword_count;
  ctx.inputs["catalog_entries"] = ctx.catalog ? ctx.catalog->entries().size() : 0;
  ctx.inputs["calendar"] = serialize_calendar(c.calendar.empty() ? default_calendar() : load_calendar(c.calendar));
}

constexpr Method kPairMethods[] = {Method::all_words, Method::names_only};

std::string method_name(Method m) { return std::string(to_string(m)); }

// Runs fn, turning an empty or undefined aggregate into a manifest note.
template <typename Fn>
void guarded(Context& ctx, const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const EmptyInputError& e) {
    ctx.manifest.note(what + " skipped: " + e.what());
  } catch (const UndefinedValueError& e) {
    ctx.manifest.note(what + " skipped: " + e.what());
  }
}

void stage_extract(Context& ctx) {
  ctx.manifest.stage("extract");
  ctx.manifest.write("counts.tsv", ctx.data.lists.to_tsv());
  ctx.manifest.write("unigrams.tsv", ctx.data.unigrams.to_tsv());
  if (ctx.catalog) ctx.manifest.write("mentions.tsv", ctx.data.mentions.to_tsv());
  std::string hist = "method,length,count\n";
  for (const auto& [m, len, n] : length_histogram(ctx.data.lists)) {
    hist += method_name(m) + ',' + std::to_string(len) + ',' + std::to_string(n) + '\n';
  }
  ctx.manifest.write("length_histogram.csv", hist);
  Json j;
  j["records_read"] = ctx.data.summary.read;
  j["records_skipped"] = ctx.data.summary.skipped;
  j["stopwords_size"] = ctx.stopword_count;
  j["distinct_lists"] = ctx.data.lists.size();
  j["list_instances"] = ctx.data.lists.total();
  j["extended_lists"] = ctx.config.extended_lists;
  j["notes"] = {"all_words: every overlapping `A and|or B` window is emitted, so `A and B or C` yields two lists",
                "all_words_extended: comma lists `A, B(,) and C` of content words (only with extended lists)",
                "names_only: catalog parts joined by commas with a final and/or/vs/slash separator"};
  ctx.manifest.write("extract_summary.json", j.dump(2) + "\n");
}

void stage_stats(Context& ctx) {
  ctx.manifest.stage("stats");
  Json j;
  j["min_count"] = ctx.config.min_count;
  j["slice_floor"] = ctx.config.slice_floor;
  j["frozen_threshold"] = ctx.config.frozen_threshold;
  j["inputs"] = ctx.inputs;
  Json methods;
  for (const Method m : kPairMethods) {
    const auto pairs = ctx.pairs(m);
    if (pairs.empty()) continue;
    const auto rows = metrics_rows(pairs, ctx.config.slice_floor);
    ctx.manifest.write("metrics_" + method_name(m) + ".csv", metrics_csv(rows));
    const auto fz = frozenness_summary(pairs, ctx.config.frozen_threshold);
    std::vector<double> ords;
    for (const auto& r : rows) ords.push_back(r.ordinality);
    std::string hist = "bin_low,bin_high,count\n";
    const auto h = unit_histogram(ords, 20);
    for (std::size_t b = 0; b < h.size(); ++b) {
      hist += format_real(b / 20.0) + ',' + format_real((b + 1) / 20.0) + ',' + std::to_string(h[b]) + '\n';
    }
    ctx.manifest.write("ordinality_histogram_" + method_name(m) + ".csv", hist);
    methods[method_name(m)] = Json{{"pairs", fz.total_pairs},
                                   {"frozen_pairs", fz.frozen_pairs},
                                   {"frozen_fraction", fz.frozen_fraction}};
  }
  j["methods"] = methods;
  ctx.manifest.write("stats.json", j.dump(2) + "\n");
}

void stage_cube(Context& ctx) {
  ctx.manifest.stage("cube");
  for (const Method m : kPairMethods) {
    const auto pairs = ctx.pairs(m);
    if (pairs.empty()) continue;
    CubeOptions opt;
    opt.min_yearly_count = ctx.config.slice_floor;
    std::string csv = "pair,first,second,asymmetry,movement,agreement\n";
    for (const auto& [key, v] : dimension_cube(pairs, opt)) {
      csv += csv_field(key.first + "|" + key.second) + ',' + csv_field(key.first) + ',' + csv_field(key.second) + ',' +
             format_real(v.asymmetry) + ',' + format_real(v.movement) + ',' + format_real(v.agreement) + '\n';
    }
    ctx.manifest.write("cube_" + method_name(m) + ".csv", csv);
  }
}

void stage_nullmodel(Context& ctx) {
  ctx.manifest.stage("nullmodel");
  NullModelOptions opt;
  opt.frozen_threshold = ctx.config.frozen_threshold;
  opt.slice_floor = ctx.config.slice_floor;
  for (const Method m : kPairMethods) {
    const auto pairs = ctx.pairs(m);
    if (pairs.empty()) continue;
    guarded(ctx, "null model " + method_name(m), [&] {
      std::optional<SpreadReport> sc, sy;
      guarded(ctx, "community spread " + method_name(m), [&] { sc = spread_over_communities(pairs, opt); });
      guarded(ctx, "year spread " + method_name(m), [&] { sy = spread_over_years(pairs, opt); });
      std::size_t resamples = *parse_resamples(ctx.config.resamples);
      if (ctx.config.resamples == "auto") resamples = default_resamples(pairs);
      if (ctx.config.resamples == "cells") resamples = std::max<std::size_t>(season_community_cells(pairs), 1);
      const auto cells = bootstrap_cells(pairs, opt);
      const auto boot = bootstrap_sbar(cells, resamples, ctx.config.seed);
      ctx.manifest.write("nullmodel_" + method_name(m) + ".json",
                         null_model_json(sc ? &*sc : nullptr, sy ? &*sy : nullptr, boot, opt));
    });
  }
}

std::string card_row(std::string_view name, std::string_view mode, const RuleEvaluation& ev) {
  std::string s = std::string(name) + ',' + std::string(mode) + ',';
  if (ev.card) {
    s += format_real(ev.card->uo) + ',' + format_real(ev.card->wo) + ',' + format_real(ev.card->ut) + ',' +
         format_real(ev.card->wt) + ',' + std::to_string(ev.card->n_types) + ',' + std::to_string(ev.card->n_tokens);
  } else {
    s += "null,null,null,null,0,0";
  }
  return s + ',' + std::to_string(ev.covered) + ',' + std::to_string(ev.total) + ',' + format_real(ev.coverage()) + '\n';
}

Json model_json(const ModelReport& r, const LogisticHyperparams& hp) {
  Json j;
  j["train_size"] = r.train_size;
  j["test_size"] = r.test_size;
  j["coverage"] = r.coverage;
  j["train_accuracy"] = r.train_accuracy;
  j["held_out_accuracy"] = r.held_out_accuracy;
  if (r.held_out_card) {
    j["held_out_scores"] = Json{{"uo", r.held_out_card->uo}, {"wo", r.held_out_card->wo},
                                {"ut", r.held_out_card->ut}, {"wt", r.held_out_card->wt}};
  }
  j["bias"] = r.model.bias;
  j["weights"] = r.model.weights;
  j["hyperparameters"] = Json{{"learning_rate", hp.learning_rate}, {"epochs", hp.epochs}, {"l2", hp.l2},
                              {"train_fraction", hp.train_fraction}, {"seed", hp.seed}};
  j["warnings"] = r.warnings;
  return j;
}

void stage_predict(Context& ctx) {
  ctx.manifest.stage("predict");
  const auto& c = ctx.config;
  std::optional<PronouncingDictionary> dict;
  if (!c.dictionary.empty()) dict = PronouncingDictionary::load(c.dictionary);
  std::optional<EmbeddingTable> emb;
  if (!c.embeddings.empty()) emb = EmbeddingTable::load(c.embeddings);
  PredictorResources res;
  res.dictionary = dict ? &*dict : nullptr;
  res.unigrams = ctx.data.unigrams.size() > 0 ? &ctx.data.unigrams : nullptr;
  res.frequency_higher_first = c.frequency_higher_first;
  std::vector<Rule> rules = {Rule::alphabetical, Rule::length};
  if (dict) {
    rules.push_back(Rule::phonemes);
    rules.push_back(Rule::syllables);
  }
  if (res.unigrams) rules.push_back(Rule::frequency);
  LogisticHyperparams hp{c.learning_rate, c.epochs, c.l2, c.train_fraction, c.seed};

  const auto pairs = ctx.pairs(Method::all_words);
  if (pairs.empty()) {
    ctx.manifest.note("no all_words pairs reach the minimum count");
    return;
  }
  std::string scores = "rule,mode,uo,wo,ut,wt,n_types,n_tokens,covered,total,coverage\n";
  for (const Rule r : rules) scores += card_row(to_string(r), "all", evaluate_rule(pairs, r, res));
  guarded(ctx, "frozen-only evaluation", [&] {
    for (const auto& ev : frozen_only_eval(pairs, rules, res, c.frozen_threshold)) {
      scores += card_row(to_string(ev.rule), "frozen", ev);
    }
  });
  ctx.manifest.write("predict_scores.csv", scores);

  std::string paired = "rule,k,truncated,comparisons,accuracy\n";
  for (const Rule r : rules) {
    guarded(ctx, "paired prediction " + std::string(to_string(r)), [&] {
      const auto p = paired_asymmetry_predict(pairs, r, res, c.paired_k);
      if (p.truncated) ctx.manifest.note("paired prediction k truncated to " + std::to_string(p.k));
      paired += std::string(to_string(r)) + ',' + std::to_string(p.k) + ',' + (p.truncated ? "1" : "0") + ',' +
                std::to_string(p.comparisons) + ',' + format_real(p.accuracy) + '\n';
    });
  }
  ctx.manifest.write("paired_predictions.csv", paired);

  if (dict) ctx.manifest.write("syllable_matrix.csv", syllable_matrix_csv(syllable_matrix(pairs, *dict)));

  const auto examples = majority_examples(pairs);
  guarded(ctx, "linear model", [&] {
    ctx.manifest.write("linear_model.json", model_json(train_linear_model(examples, res, hp), hp).dump(2) + "\n");
  });
  if (emb) {
    guarded(ctx, "sweep-line model", [&] {
      ctx.manifest.write("sweepline.json", model_json(train_sweepline(*emb, examples, hp), hp).dump(2) + "\n");
    });
  }
}

void stage_names(Context& ctx) {
  ctx.manifest.stage("names");
  if (!ctx.catalog) {
    ctx.manifest.note("no catalog; proper-noun analyses skipped");
    return;
  }
  const auto& c = ctx.config;
  const auto& lists = ctx.retained();
  Json j;
  if (!c.home_map.empty()) {
    const auto homes = load_home_map(c.home_map);
    std::string prox = "community,home_entity,home_first,home_second,fraction_first\n";
    for (const auto& [community, home] : homes) {
      try {
        const auto p = proximity_counts(lists, HomeContext{community, home});
        prox += csv_field(community) + ',' + csv_field(home) + ',' + std::to_string(p.home_first) + ',' +
                std::to_string(p.home_second) + ',' + format_real(p.fraction_first) + '\n';
      } catch (const EmptyInputError&) {
        // communities without home lists are omitted
      }
    }
    ctx.manifest.write("proximity.csv", prox);
    ctx.manifest.write("cross_community.csv", cross_community_csv(cross_community_matrix(lists, homes, c.min_count)));
  }
  if (ctx.catalog->has_attribute_key(c.party_key)) {
    const auto p = party_order_counts(lists, *ctx.catalog, c.party_key);
    ctx.manifest.write("party_order.csv", party_order_csv(p));
  }
  const auto english =
      load_word_list(c.english_words.empty() ? default_data_dir() / "english_words.txt" : fs::path(c.english_words));
  const auto ratios = mention_ratios(lists, ctx.data.mentions, english, c.min_count);
  ctx.manifest.write("mention_ratio.csv", mention_ratio_csv(ratios));
  j["mention_ratio"] = Json{{"entities", ratios.rows.size()},
                            {"excluded_english", ratios.excluded_english},
                            {"excluded_floor", ratios.excluded_floor},
                            {"average", ratios.average ? Json(*ratios.average) : Json(nullptr)}};

  EntityMetadata meta(*ctx.catalog);
  add_team_mentions(meta, *ctx.catalog, ctx.data.mentions, ctx.data.unigrams);
  std::set<std::string> keys;
  for (const auto& e : ctx.catalog->entries()) {
    for (const auto& [k, v] : e.attributes) {
      if (parse_real(v) && k != "priority" && k != "last_year") keys.insert(k);
    }
    if (e.attributes.count("team")) keys.insert("team_mentions");
  }
  const auto pairs = ctx.pairs(Method::names_only);
  std::string scores = "attribute,direction,uo,wo,ut,wt,n_types,n_tokens,covered,total,coverage\n";
  for (const auto& k : keys) {
    for (const bool higher : {true, false}) {
      scores += card_row(k, higher ? "higher_first" : "lower_first", evaluate_metadata(pairs, k, higher, meta));
    }
  }
  ctx.manifest.write("metadata_scores.csv", scores);
  ctx.manifest.write("names.json", j.dump(2) + "\n");
}

void stage_graph(Context& ctx) {
  ctx.manifest.stage("graph");
  CycleOptions opt{ctx.config.max_cycles, ctx.config.max_cycle_length};
  for (const Method m : kPairMethods) {
    const auto pairs = ctx.pairs(m);
    if (pairs.empty()) continue;
    const auto g = build_graph(pairs, ctx.config.edge_floor);
    const auto result = min_cyclic_threshold(g, opt);
    if (result.truncated) ctx.manifest.note("cycle enumeration hit the cap for " + method_name(m));
    ctx.manifest.write("graph_" + method_name(m) + ".dot", export_dot(g));
    ctx.manifest.write("cycles_" + method_name(m) + ".json",
                       cycle_report_json(g, result, threshold_sweep(g, even_taus(11))));
  }
}

void stage_multi(Context& ctx) {
  ctx.manifest.stage("multi");
  const auto& c = ctx.config;
  const auto all = collect_multinomials(ctx.data.lists, 3, {Method::names_only, Method::all_words_extended});
  ctx.manifest.write("trinomials.csv", trinomial_csv(all));
  const auto tri = filter_multinomials(all, c.min_count);
  PairTable binomials = ctx.pairs(Method::all_words);
  for (auto& [key, stats] : ctx.pairs(Method::names_only)) {
    for (const auto& [slice, sc] : stats.counts) binomials[key].counts[slice] += sc;
  }
  Json j;
  j["min_count"] = c.min_count;
  j["seed"] = c.seed;
  j["trinomials"] = tri.size();
  j["trinomial_frozen_fraction"] = nullptr;
  j["binomial_baseline"] = nullptr;
  j["binomial_baseline_expected"] = nullptr;
  guarded(ctx, "trinomial frozen fraction", [&] { j["trinomial_frozen_fraction"] = trinomial_frozen_fraction(tri, c.min_count); });
  guarded(ctx, "binomial baseline", [&] {
    j["binomial_baseline"] = subsampled_binomial_baseline(binomials, tri, c.seed);
    j["binomial_baseline_expected"] = expected_binomial_baseline(binomials, tri);
  });
  const auto st = last_position_stability(tri);
  j["last_position_stability"] = Json{{"stable", st.stable}, {"two_orderings", st.total},
                                      {"fraction", st.fraction ? Json(*st.fraction) : Json(nullptr)}};
  const auto records = compatibility_all(binomials, tri);
  ctx.manifest.write("compatibility.csv", compatibility_csv(records));
  guarded(ctx, "compatibility report", [&] {
    const auto r = compatibility_report(records);
    j["compatibility"] = Json{{"asymmetry_greater", r.asymmetry_greater},
                              {"compatibility_greater", r.compatibility_greater},
                              {"equal", r.equal},
                              {"histogram_asymmetry_minus_compatibility", r.histogram}};
  });
  j["notes"] = {"trinomials come from names_only lists and, with extended lists, the comma grammar",
                "a pair is embedded in a trinomial when both words occur anywhere in it"};
  ctx.manifest.write("multinomials.json", j.dump(2) + "\n");
}

}  // namespace

std::string config_echo_json(const RunConfig& config) { return config_echo(config).dump(2) + "\n"; }

int run(std::string_view subcommand, const RunConfig& config, std::ostream& log) {
  const auto problems = validate(config, subcommand);
  if (!problems.empty()) {
    log << "invalid configuration:\n";
    for (const auto& p : problems) log << "  - " << p << "\n";
    return 2;
  }
  if (config.threads > 0) omp_set_num_threads(config.threads);
  try {
    fs::create_directories(config.out);
    Manifest manifest(config.out, std::string(subcommand));
    Context ctx{config, log, manifest, {}, {}, 0, Json::object(), {}};
    load_inputs(ctx);
    const std::vector<std::pair<std::string_view, std::function<void(Context&)>>> stages = {
        {"extract", stage_extract}, {"stats", stage_stats}, {"cube", stage_cube},
        {"nullmodel", stage_nullmodel}, {"predict", stage_predict}, {"names", stage_names},
        {"graph", stage_graph}, {"multi", stage_multi}};
    for (const auto& [name, fn] : stages) {
      if (subcommand == "report" || subcommand == name) {
        log << "stage " << name << "\n";
        fn(ctx);
      }
    }
    manifest.stage(std::string(subcommand));
    manifest.finish(config, ctx.inputs);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace binomials
