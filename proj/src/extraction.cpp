#include "binomials/extraction.hpp"

#include "binomials/text_io.hpp"

namespace binomials {

std::optional<Separator> separator_of(std::string_view token) {
  switch (token.size()) {
    case 1:
      if (token[0] == ',') return Separator::comma;
      if (token[0] == '/') return Separator::slash;
      return std::nullopt;
    case 2:
      if (token == "or") return Separator::or_;
      if (token == "vs") return Separator::vs;
      return std::nullopt;
    case 3:
      if (token == "and") return Separator::and_;
      if (token == "vs.") return Separator::vs;
      return std::nullopt;
    case 4:
      if (token == "v.s.") return Separator::vs;
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::string_view to_string(Separator sep) {
  switch (sep) {
    case Separator::and_: return "and";
    case Separator::or_: return "or";
    case Separator::vs: return "vs";
    case Separator::slash: return "/";
    case Separator::comma: return ",";
  }
  return "?";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::all_words: return "all_words";
    case Method::names_only: return "names_only";
    case Method::all_words_extended: return "all_words_extended";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "all_words") return Method::all_words;
  if (name == "names_only") return Method::names_only;
  if (name == "all_words_extended") return Method::all_words_extended;
  return std::nullopt;
}

StopWordList StopWordList::parse(std::string_view text) {
  StringSet words;
  for (auto line : split(text, '\n')) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) words.insert(to_lower_ascii(line));
  }
  return StopWordList(std::move(words));
}

StopWordList StopWordList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const StopWordList& StopWordList::builtin() {
  static const StopWordList list = parse(
#include "builtin_stopwords.inc"
  );
  return list;
}

void find_name_matches(const TokenizedText& tokens, const NameCatalog& catalog, std::vector<NameMatch>& out) {
  out.clear();
  if (catalog.empty()) return;
  std::string key;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t len = catalog.match_at(tokens, i, key);
    if (len == 0) {
      ++i;
      continue;
    }
    out.push_back(NameMatch{i, len, catalog.resolve(key)});
    i += len;
  }
}

namespace {

ListInstance make_instance(std::span<const std::string_view> items, std::span<const Separator> seps, Method m) {
  ListInstance inst;
  inst.items.assign(items.begin(), items.end());
  inst.separators.assign(seps.begin(), seps.end());
  inst.method = m;
  return inst;
}

}  // namespace

std::vector<ListInstance> extract_all_words(const std::vector<Token>& tokens, const StopWordList& stopwords,
                                            bool extended) {
  const auto text = TokenizedText::from_tokens(tokens);
  std::vector<ListInstance> out;
  scan_all_words(text, stopwords, extended, [&](auto items, auto seps, Method m) {
    out.push_back(make_instance(items, seps, m));
  });
  return out;
}

std::vector<ListInstance> extract_name_lists(const std::vector<Token>& tokens, const NameCatalog& catalog) {
  const auto text = TokenizedText::from_tokens(tokens);
  std::vector<NameMatch> matches;
  find_name_matches(text, catalog, matches);
  std::vector<ListInstance> out;
  scan_name_lists(text, matches, [&](auto items, auto seps, Method m) {
    out.push_back(make_instance(items, seps, m));
  });
  return out;
}

}  // namespace binomials
