#include "lsakit/corpusio.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "lsakit/errors.hpp"
#include "util/text.hpp"

namespace lsakit::corpusio {

std::string_view to_string(SourceCategory c) {
  switch (c) {
    case SourceCategory::stories: return "stories";
    case SourceCategory::child_productions: return "child_productions";
    case SourceCategory::textbooks: return "textbooks";
    case SourceCategory::encyclopedia: return "encyclopedia";
    case SourceCategory::dictionary: return "dictionary";
    case SourceCategory::news: return "news";
  }
  return "?";
}

std::optional<SourceCategory> parse_category(std::string_view s) {
  s = util::trim(s);
  for (auto c : kAllCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

AgeLevel::AgeLevel(int value) : value_(value) {
  if (value < kMin || value > kMax)
    throw InputError("age level must be in 1..4, got " + std::to_string(value));
}

// ---------------------------------------------------------------------------

CommonWordList::CommonWordList(const std::vector<std::string>& words) {
  for (const auto& w : words) words_.insert(normalize(w));
}

CommonWordList CommonWordList::load(const std::filesystem::path& path) {
  std::vector<std::string> words;
  for (const auto& line : util::read_lines(path)) {
    if (util::is_skippable(line)) continue;
    words.emplace_back(util::trim(line));
  }
  return CommonWordList(words);
}

bool CommonWordList::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

std::string_view to_string(LemmaMode m) {
  switch (m) {
    case LemmaMode::none: return "none";
    case LemmaMode::verbs_only: return "verbs_only";
    case LemmaMode::all: return "all";
  }
  return "?";
}

std::optional<LemmaMode> parse_lemma_mode(std::string_view s) {
  for (auto m : {LemmaMode::none, LemmaMode::verbs_only, LemmaMode::all})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

LemmaMap LemmaMap::load(const std::filesystem::path& path) {
  LemmaMap map;
  std::size_t line_no = 0;
  for (const auto& line : util::read_lines(path)) {
    ++line_no;
    if (util::is_skippable(line)) continue;
    const auto cols = util::split(line, '\t');
    if (cols.size() < 2 || util::trim(cols[0]).empty() || util::trim(cols[1]).empty())
      throw InputError(util::where(path, line_no) + ": expected token<TAB>lemma[<TAB>pos]");
    map.add(util::trim(cols[0]), util::trim(cols[1]), cols.size() > 2 ? util::trim(cols[2]) : "");
  }
  return map;
}

void LemmaMap::add(std::string_view token, std::string_view lemma, std::string_view pos) {
  if (lemma.empty()) throw InputError("empty lemma for token '" + std::string(token) + "'");
  entries_[normalize(token)] = LemmaEntry{normalize(lemma), std::string(pos)};
}

const LemmaEntry* LemmaMap::find(std::string_view token) const {
  const auto it = entries_.find(std::string(token));
  return it == entries_.end() ? nullptr : &it->second;
}

bool is_verb_tag(std::string_view pos) {
  return !pos.empty() && std::toupper(static_cast<unsigned char>(pos.front())) == 'V';
}

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens, const LemmaMap& map,
                                   LemmaMode mode) {
  if (mode == LemmaMode::none) return tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    const LemmaEntry* e = map.find(t);
    const bool replace = e && (mode == LemmaMode::all || is_verb_tag(e->pos));
    out.push_back(replace ? e->lemma : t);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<SourceDescriptor> read_manifest(const std::filesystem::path& manifest_path) {
  const auto base = manifest_path.parent_path();
  std::vector<SourceDescriptor> out;
  std::size_t line_no = 0;
  for (const auto& line : util::read_lines(manifest_path)) {
    ++line_no;
    if (util::is_skippable(line)) continue;
    const auto cols = util::split(line, '\t');
    const auto at = util::where(manifest_path, line_no);
    if (cols.size() < 3)
      throw InputError(at + ": undeclared category/level (expected path<TAB>category<TAB>level)");
    const auto category = parse_category(cols[1]);
    if (!category) throw InputError(at + ": undeclared category '" + std::string(cols[1]) + "'");
    const auto level = util::parse_int(cols[2]);
    if (!level || *level < AgeLevel::kMin || *level > AgeLevel::kMax)
      throw InputError(at + ": undeclared level '" + std::string(cols[2]) + "'");
    std::filesystem::path p{std::string(util::trim(cols[0]))};
    if (p.is_relative()) p = base / p;
    out.push_back({p, *category, AgeLevel(static_cast<int>(*level))});
  }
  if (out.empty()) throw InputError("manifest lists no sources: " + manifest_path.string());
  return out;
}

std::vector<Tokenized> split_paragraphs(std::string_view text, const TokenizePolicy& policy) {
  std::vector<Tokenized> out;
  std::string block;
  auto flush = [&] {
    if (util::trim(block).empty()) {
      block.clear();
      return;
    }
    auto tok = tokenize(block, policy);
    if (!tok.tokens.empty()) out.push_back(std::move(tok));
    block.clear();
  };
  for (auto line : util::split(text, '\n')) {
    if (util::trim(line).empty()) {
      flush();
    } else {
      block.append(line);
      block.push_back('\n');
    }
  }
  flush();
  return out;
}

Corpus ingest(const std::vector<SourceDescriptor>& manifest, const IngestOptions& options) {
  if (manifest.empty()) throw InputError("empty manifest");
  Corpus c;
  c.manifest = manifest;
  for (std::size_t si = 0; si < manifest.size(); ++si) {
    const auto& src = manifest[si];
    if (!std::filesystem::is_regular_file(src.path))
      throw InputError("cannot read file: " + src.path.string());
    auto blocks = split_paragraphs(util::read_file(src.path), options.policy);
    if (blocks.empty()) throw InputError("empty source: " + src.path.string());
    for (std::size_t pi = 0; pi < blocks.size(); ++pi) {
      Paragraph p;
      p.id = std::to_string(si) + "." + std::to_string(pi);
      p.tokens = options.lemmas
                     ? lemmatize(blocks[pi].tokens, *options.lemmas, options.lemma_mode)
                     : std::move(blocks[pi].tokens);
      p.sentence_lengths = std::move(blocks[pi].sentence_lengths);
      p.category = src.category;
      p.level = src.level;
      c.paragraphs.push_back(std::move(p));
    }
  }
  std::stable_sort(c.paragraphs.begin(), c.paragraphs.end(),
                   [](const Paragraph& a, const Paragraph& b) { return a.level < b.level; });
  return c;
}

// ---------------------------------------------------------------------------

ReadabilityCounts readability_counts(const Paragraph& p, const CommonWordList& list) {
  if (p.tokens.empty() || p.sentence_lengths.empty())
    throw DataError("empty paragraph: " + p.id);
  ReadabilityCounts counts;
  counts.tokens = p.tokens.size();
  counts.sentences = p.sentence_lengths.size();
  for (const auto& t : p.tokens)
    if (!list.contains(t)) ++counts.difficult;
  return counts;
}

double readability_from_counts(const ReadabilityCounts& counts) {
  if (counts.tokens == 0 || counts.sentences == 0) throw DataError("empty paragraph");
  const double pct_difficult =
      100.0 * static_cast<double>(counts.difficult) / static_cast<double>(counts.tokens);
  const double mean_sentence =
      static_cast<double>(counts.tokens) / static_cast<double>(counts.sentences);
  return 0.75 * pct_difficult + 0.25 * mean_sentence;
}

double readability(const Paragraph& p, const CommonWordList& list) {
  return readability_from_counts(readability_counts(p, list));
}

Corpus stratify(Corpus c, const CommonWordList& list) {
  for (auto& p : c.paragraphs) p.readability = readability(p, list);
  std::stable_sort(c.paragraphs.begin(), c.paragraphs.end(),
                   [](const Paragraph& a, const Paragraph& b) {
                     if (a.level != b.level) return a.level < b.level;
                     return *a.readability < *b.readability;
                   });
  return c;
}

namespace {

bool strictly_increasing(const std::map<int, double>& by_level) {
  const double* prev = nullptr;
  for (const auto& [level, mean] : by_level) {
    if (prev && !(mean > *prev)) return false;
    prev = &mean;
  }
  return true;
}

}  // namespace

CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats s;
  s.paragraph_count = c.paragraphs.size();
  std::map<int, std::pair<double, std::size_t>> level_acc;
  std::map<SourceCategory, std::map<int, std::pair<double, std::size_t>>> cat_acc;
  for (const auto& p : c.paragraphs) {
    s.token_count += p.tokens.size();
    s.words_by_category[p.category] += p.tokens.size();
    s.paragraphs_by_level[p.level.value()] += 1;
    if (p.readability) {
      auto& a = level_acc[p.level.value()];
      a.first += *p.readability;
      a.second += 1;
      auto& b = cat_acc[p.category][p.level.value()];
      b.first += *p.readability;
      b.second += 1;
    }
  }
  for (const auto& [level, acc] : level_acc)
    s.mean_readability_by_level[level] = acc.first / static_cast<double>(acc.second);
  for (const auto& [cat, levels] : cat_acc)
    for (const auto& [level, acc] : levels)
      s.mean_readability_by_category_level[cat][level] = acc.first / static_cast<double>(acc.second);

  s.readability_monotone = strictly_increasing(s.mean_readability_by_level);
  s.readability_monotone_per_category = std::all_of(
      s.mean_readability_by_category_level.begin(), s.mean_readability_by_category_level.end(),
      [](const auto& kv) { return strictly_increasing(kv.second); });
  return s;
}

}  // namespace lsakit::corpusio
