#include "binomials/extract.hpp"

#include <omp.h>

#include <exception>
#include <fstream>

#include "binomials/errors.hpp"

namespace binomials {

void ExtractResult::merge(const ExtractResult& other) {
  lists.merge(other.lists);
  unigrams.merge(other.unigrams);
  mentions.merge(other.mentions);
  summary += other.summary;
}

std::vector<Shard> plan_shards(const std::filesystem::path& path, std::size_t n, CorpusFormat format) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot open " + path.string());
  if (n <= 1 || format == CorpusFormat::csv || size == 0) return {Shard{path, 0, size}};

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint64_t> cuts{0};
  for (std::size_t i = 1; i < n; ++i) {
    std::uint64_t pos = std::max<std::uint64_t>(size * i / n, cuts.back());
    // advance to the byte after the next newline at or beyond pos - 1
    if (pos > 0) {
      in.clear();
      in.seekg(static_cast<std::streamoff>(pos - 1));
      char c = 0;
      while (pos <= size && in.get(c) && c != '\n') ++pos;
      if (!in) pos = size;
    }
    if (pos > cuts.back() && pos < size) cuts.push_back(pos);
  }
  std::vector<Shard> shards;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    shards.push_back(Shard{path, cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : size});
  }
  return shards;
}

ExtractResult extract_shard(const Shard& shard, const ExtractConfig& config) {
  const bool csv = config.read.format == CorpusFormat::csv;
  BlockReader blocks(shard.path, csv, 4u << 20, shard.begin, shard.end - shard.begin);
  std::string header;
  ExtractResult result;
  if (csv) {
    header = blocks.take_first_record();
    if (header.empty()) return result;
  }
  const RecordParser parser(config.read, header);
  const Tokenizer tokenizer(config.tokenizer);
  TokenizedText tokens;
  std::vector<NameMatch> matches;
  RecordView view;
  std::string block;

  const auto process = [&](char* begin, std::size_t len) {
    switch (parser.parse(begin, len, view)) {
      case ParseOutcome::blank: return;
      case ParseOutcome::malformed: ++result.summary.skipped; return;
      case ParseOutcome::ok: ++result.summary.read; break;
    }
    const int season = season_year_of(view.community, view.timestamp, config.calendar);
    tokenizer.tokenize(view.text, tokens);
    if (config.count_unigrams) {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto t = tokens[i];
        if (t != "," && t != "/") result.unigrams.add(t);
      }
    }
    const auto emit = [&](std::span<const std::string_view> items, std::span<const Separator>, Method method) {
      result.lists.add(method, view.community, season, items);
    };
    if (config.all_words) scan_all_words(tokens, *config.stopwords, config.extended_lists, emit);
    if (config.catalog != nullptr) {
      find_name_matches(tokens, *config.catalog, matches);
      for (const auto& m : matches) result.mentions.add(m.canonical);
      scan_name_lists(tokens, matches, emit);
    }
  };
  while (blocks.next(block)) for_each_record(block, csv, process);
  return result;
}

ExtractResult extract_files_serial(const std::vector<std::filesystem::path>& paths, const ExtractConfig& config) {
  ExtractResult total;
  for (const auto& path : paths) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot open " + path.string());
    auto part = extract_shard(Shard{path, 0, size}, config);
    check_format_ratio(part.summary, path);
    total.merge(part);
  }
  return total;
}

ExtractResult extract_files(const std::vector<std::filesystem::path>& paths, const ExtractConfig& config,
                            std::size_t shards_per_file) {
  std::vector<Shard> shards;
  std::vector<std::size_t> owner;
  for (std::size_t f = 0; f < paths.size(); ++f) {
    for (auto& s : plan_shards(paths[f], shards_per_file, config.read.format)) {
      shards.push_back(std::move(s));
      owner.push_back(f);
    }
  }
  std::vector<ExtractResult> parts(shards.size());
  std::vector<std::exception_ptr> errors(shards.size());
  const auto count = static_cast<std::ptrdiff_t>(shards.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      parts[i] = extract_shard(shards[i], config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<ReadSummary> per_file(paths.size());
  for (std::size_t i = 0; i < parts.size(); ++i) per_file[owner[i]] += parts[i].summary;
  for (std::size_t f = 0; f < paths.size(); ++f) check_format_ratio(per_file[f], paths[f]);
  ExtractResult total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace binomials
