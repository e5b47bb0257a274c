#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "binomials/corpus.hpp"
#include "binomials/counts.hpp"
#include "binomials/extraction.hpp"
#include "binomials/tokenize.hpp"

namespace binomials {

/// Everything the extraction kernel needs per record.
struct ExtractConfig {
  ReadOptions read;
  SeasonCalendar calendar = default_calendar();
  TokenizerConfig tokenizer;
  const StopWordList* stopwords = &StopWordList::builtin();
  const NameCatalog* catalog = nullptr;  // enables Names Only when set
  bool all_words = true;
  bool extended_lists = false;
  bool count_unigrams = true;
};

struct ExtractResult {
  ListCounts lists;
  WordCounts unigrams;
  WordCounts mentions;  // catalog entity mentions (resolved), when a catalog is set
  ReadSummary summary;

  void merge(const ExtractResult& other);
  bool operator==(const ExtractResult&) const = default;
};

/// Half-open byte range of one input file; every range starts on a record boundary.
struct Shard {
  std::filesystem::path path;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

/// Splits a file into at most `n` shards aligned to line starts. CSV files are
/// never split (quoted fields may span lines).
std::vector<Shard> plan_shards(const std::filesystem::path& path, std::size_t n, CorpusFormat format);

/// Serial kernel over one shard. Does not apply the malformed-ratio check.
ExtractResult extract_shard(const Shard& shard, const ExtractConfig& config);

/// Serial reference: each file read start to finish on the calling thread.
ExtractResult extract_files_serial(const std::vector<std::filesystem::path>& paths, const ExtractConfig& config);

/// OpenMP kernel: every file is cut into `shards_per_file` shards processed
/// concurrently; results are merged, so the outcome equals the serial reference.
/// Throws FormatMismatchError per file when more than half its lines are malformed.
ExtractResult extract_files(const std::vector<std::filesystem::path>& paths, const ExtractConfig& config,
                            std::size_t shards_per_file);

}  // namespace binomials
