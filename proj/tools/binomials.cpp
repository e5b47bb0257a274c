// Command-line front end. Options live on the top-level app so a config file
// can set any of them; precedence is flags, then the config file, then defaults.
#include <iostream>

#include <CLI11.hpp>

#include "binomials/pipeline.hpp"

int main(int argc, char** argv) {
  binomials::RunConfig c;
  CLI::App app{"Ordering statistics for lists in large text corpora"};
  app.set_config("--config", "", "Key-value config file (TOML/INI style)")
      ->envname("BINOMIALS_CONFIG")
      ->check(CLI::ExistingFile);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--corpus", c.corpus, "Corpus file (repeatable)");
  app.add_option("--format", c.format, "Corpus format: jsonl, plain, csv")->capture_default_str();
  app.add_option("--community", c.community, "Community label for plain text, fallback for the others");
  app.add_option("--csv-text-column", c.csv_text_column)->capture_default_str();
  app.add_option("--csv-time-column", c.csv_time_column)->capture_default_str();
  app.add_option("--csv-community-column", c.csv_community_column)->capture_default_str();
  app.add_option("--csv-author-column", c.csv_author_column)->capture_default_str();
  app.add_option("--calendar", c.calendar, "Season calendar (community=month lines)");
  app.add_option("--stopwords", c.stopwords, "Stop-word list; default is the bundled list");
  app.add_option("--catalog", c.catalogs, "Name catalog (repeatable)");
  app.add_option("--home-map", c.home_map, "community=entity lines for the proximity analyses");
  app.add_option("--dictionary", c.dictionary, "Pronouncing dictionary: word phonemes syllables");
  app.add_option("--embeddings", c.embeddings, "Word vectors, one word per line");
  app.add_option("--english-words", c.english_words, "Word list for the mention-ratio exclusion");
  app.add_option("--counts", c.counts, "Directory written by `extract`; skips corpus reading");
  app.add_flag("--extended-lists,!--no-extended-lists", c.extended_lists,
               "Also extract comma lists of content words");
  app.add_option("--min-count", c.min_count)->capture_default_str();
  app.add_option("--slice-floor", c.slice_floor, "Minimum instances per year or community slice")
      ->capture_default_str();
  app.add_option("--edge-floor", c.edge_floor, "Minimum instances for a graph edge")->capture_default_str();
  app.add_option("--frozen-threshold", c.frozen_threshold)->capture_default_str();
  app.add_option("--seed", c.seed)->capture_default_str();
  app.add_option("--resamples", c.resamples, "auto, cells, or a count")->capture_default_str();
  app.add_flag("--frequency-higher-first,!--frequency-lower-first", c.frequency_higher_first,
               "Direction of the frequency rule");
  app.add_option("--paired-k", c.paired_k)->capture_default_str();
  app.add_option("--learning-rate", c.learning_rate)->capture_default_str();
  app.add_option("--epochs", c.epochs)->capture_default_str();
  app.add_option("--l2", c.l2)->capture_default_str();
  app.add_option("--train-fraction", c.train_fraction)->capture_default_str();
  app.add_option("--party-key", c.party_key)->capture_default_str();
  app.add_option("--max-cycles", c.max_cycles)->capture_default_str();
  app.add_option("--max-cycle-length", c.max_cycle_length)->capture_default_str();
  app.add_option("--out,-o", c.out, "Output directory")->capture_default_str();
  app.add_option("--shards", c.shards, "Shards per input file")->capture_default_str();
  app.add_option("--threads", c.threads, "OpenMP threads; 0 keeps the default")->capture_default_str();

  const char* help[] = {"Extract lists and write count tables",
                        "Per-pair metrics and frozenness",
                        "Asymmetry, movement and agreement vectors",
                        "Bernoulli null model and bootstrap",
                        "Ordering predictors and learned models",
                        "Proper-noun analyses",
                        "Ordinality graph, cycles and DOT export",
                        "Trinomials and compatibility",
                        "Every stage plus a manifest"};
  std::size_t i = 0;
  for (const auto name : binomials::kSubcommands) app.add_subcommand(std::string(name), help[i++]);

  CLI11_PARSE(app, argc, argv);
  const auto* sub = app.get_subcommands().front();
  return binomials::run(sub->get_name(), c, std::cerr);
}
