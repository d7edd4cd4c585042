#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lsakit::corpusio {

enum class SourceCategory { stories, child_productions, textbooks, encyclopedia, dictionary, news };

inline constexpr SourceCategory kAllCategories[] = {
    SourceCategory::stories,      SourceCategory::child_productions, SourceCategory::textbooks,
    SourceCategory::encyclopedia, SourceCategory::dictionary,        SourceCategory::news};

std::string_view to_string(SourceCategory c);
std::optional<SourceCategory> parse_category(std::string_view s);

// Cumulative exposure level: 1 = 4-7y, 2 = 7-11y, 3 = 11-18y, 4 = adult.
class AgeLevel {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 4;

  // Throws InputError outside 1..4.
  explicit AgeLevel(int value);
  int value() const noexcept { return value_; }
  friend auto operator<=>(AgeLevel, AgeLevel) = default;

 private:
  int value_;
};

struct Paragraph {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> sentence_lengths;
  SourceCategory category = SourceCategory::stories;
  AgeLevel level{1};
  std::optional<double> readability;
};

struct SourceDescriptor {
  std::filesystem::path path;
  SourceCategory category = SourceCategory::stories;
  AgeLevel level{1};
};

struct Corpus {
  std::vector<Paragraph> paragraphs;
  std::vector<SourceDescriptor> manifest;
};

// How intra-word apostrophes and hyphens are treated. `split` breaks the
// word at the mark and drops it ("l'eau" -> "l", "eau").
enum class MarkPolicy { keep, split };

struct TokenizePolicy {
  MarkPolicy apostrophes = MarkPolicy::split;
  MarkPolicy hyphens = MarkPolicy::keep;
};

struct Tokenized {
  std::vector<std::string> tokens;
  std::vector<std::size_t> sentence_lengths;
};

// NFC + default case folding. Accents are preserved.
std::string normalize(std::string_view text);

Tokenized tokenize(std::string_view text, const TokenizePolicy& policy = {});

// ---------------------------------------------------------------------------
// Lexical resources

class CommonWordList {
 public:
  CommonWordList() = default;
  explicit CommonWordList(const std::vector<std::string>& words);

  // One word per line, UTF-8. Blank lines and lines starting with '#' ignored.
  static CommonWordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct LemmaEntry {
  std::string lemma;
  std::string pos;  // empty when the source file gave no tag
};

enum class LemmaMode { none, verbs_only, all };

std::string_view to_string(LemmaMode m);
std::optional<LemmaMode> parse_lemma_mode(std::string_view s);

class LemmaMap {
 public:
  LemmaMap() = default;

  // TSV: token<TAB>lemma[<TAB>pos]
  static LemmaMap load(const std::filesystem::path& path);

  void add(std::string_view token, std::string_view lemma, std::string_view pos = {});
  const LemmaEntry* find(std::string_view token) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, LemmaEntry> entries_;
};

// Verb tags are recognised by a leading 'V' ("V", "VER", "VERB:pres", ...).
bool is_verb_tag(std::string_view pos);

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens, const LemmaMap& map,
                                   LemmaMode mode);

// ---------------------------------------------------------------------------
// Ingestion

// TSV lines `path<TAB>category<TAB>level`; relative paths resolve against
// the manifest's directory.
std::vector<SourceDescriptor> read_manifest(const std::filesystem::path& manifest_path);

struct IngestOptions {
  TokenizePolicy policy;
  const LemmaMap* lemmas = nullptr;
  LemmaMode lemma_mode = LemmaMode::none;
};

// Paragraphs are blank-line-separated blocks. Ids are "<source>.<paragraph>".
// Exposure order: ascending level, manifest order within a level.
Corpus ingest(const std::vector<SourceDescriptor>& manifest, const IngestOptions& options = {});

// Splits already-loaded text into paragraphs the same way ingest() does.
std::vector<Tokenized> split_paragraphs(std::string_view text, const TokenizePolicy& policy = {});

// ---------------------------------------------------------------------------
// Readability and stratification

struct ReadabilityCounts {
  std::size_t tokens = 0;
  std::size_t difficult = 0;
  std::size_t sentences = 0;
};

ReadabilityCounts readability_counts(const Paragraph& p, const CommonWordList& list);

// 0.75 * percent difficult words + 0.25 * mean sentence length (in words).
double readability_from_counts(const ReadabilityCounts& counts);
double readability(const Paragraph& p, const CommonWordList& list);

// Scores every paragraph, then stable-sorts by (level, readability).
Corpus stratify(Corpus c, const CommonWordList& list);

struct CorpusStats {
  std::size_t token_count = 0;
  std::size_t paragraph_count = 0;
  std::map<SourceCategory, std::size_t> words_by_category;
  std::map<int, std::size_t> paragraphs_by_level;
  // Only levels with at least one scored paragraph appear.
  std::map<int, double> mean_readability_by_level;
  std::map<SourceCategory, std::map<int, double>> mean_readability_by_category_level;
  // Level means strictly increase with level (vacuously true with < 2 levels).
  bool readability_monotone = true;
  // Same check within each category.
  bool readability_monotone_per_category = true;
};

CorpusStats corpus_stats(const Corpus& c);

// ---------------------------------------------------------------------------
// Corpus file: one record per line,
//   id<TAB>level<TAB>category<TAB>readability<TAB>tokens<TAB>sentence_lengths
// readability is "-" when unscored; tokens are space-joined; sentence lengths
// are comma-joined.

void write_corpus(std::ostream& out, const Corpus& c);
void save_corpus(const std::filesystem::path& path, const Corpus& c);
Corpus read_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace lsakit::corpusio
