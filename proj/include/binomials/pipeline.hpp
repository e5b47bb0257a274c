#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace binomials {

/// Every setting a subcommand may read. Paths are kept as given.
struct RunConfig {
  std::vector<std::string> corpus;
  std::string format = "jsonl";
  std::string community;
  std::string csv_text_column = "text";
  std::string csv_time_column = "timestamp";
  std::string csv_community_column = "community";
  std::string csv_author_column = "author";

  std::string calendar;    // empty: built-in calendar
  std::string stopwords;   // empty: built-in list
  std::vector<std::string> catalogs;
  std::string home_map;    // empty: none
  std::string dictionary;
  std::string embeddings;
  std::string english_words;  // empty: bundled list
  std::string counts;      // directory with counts.tsv etc.; empty: extract from the corpus

  bool extended_lists = false;
  std::uint64_t min_count = 30;
  std::uint64_t slice_floor = 30;
  std::uint64_t edge_floor = 30;
  double frozen_threshold = 0.97;

  std::uint64_t seed = 1;
  /// Bootstrap resamples: "auto" = max(cells, 100), "cells" = one per season x community cell, or a number.
  std::string resamples = "auto";

  bool frequency_higher_first = true;
  std::size_t paired_k = 1000;
  double learning_rate = 0.5;
  std::size_t epochs = 500;
  double l2 = 1e-4;
  double train_fraction = 0.8;

  std::string party_key = "party";
  std::size_t max_cycles = 10000;
  std::size_t max_cycle_length = 12;

  std::string out = "out";
  std::size_t shards = 1;   // per input file; not part of the output identity
  int threads = 0;          // 0: OpenMP default; not part of the output identity
};

inline constexpr std::string_view kSubcommands[] = {"extract", "stats", "cube", "nullmodel", "predict",
                                                     "names",   "graph", "multi", "report"};

/// Every problem with the configuration for `subcommand`; empty when valid.
std::vector<std::string> validate(const RunConfig& config, std::string_view subcommand);

/// Config echo as JSON: every field except the output path, shards, and threads.
std::string config_echo_json(const RunConfig& config);

/// Runs one subcommand. Writes artifacts and manifest.json under config.out.
/// Progress and notes go to `log`. Returns the process exit status.
int run(std::string_view subcommand, const RunConfig& config, std::ostream& log);

/// Bundled data directory (calendar, stop words, word lists, sample catalogs).
std::filesystem::path default_data_dir();

}  // namespace binomials
