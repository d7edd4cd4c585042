#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsakit/corpusio.hpp"
#include "lsakit/errors.hpp"
#include "lsakit/vecspace.hpp"

namespace lsakit::evalsuite {

// ---------------------------------------------------------------------------
// Statistics

struct Correlation {
  double r = 0.0;
  std::size_t n = 0;
  double p = 1.0;  // two-tailed
  // Zero variance on either side: r and p are not meaningful (reported as 0 and 1).
  bool degenerate = false;
};

struct TTest {
  double t = 0.0;
  std::size_t df = 0;
  double p = 1.0;  // two-tailed
  // Differences have zero variance. Identical samples give t = 0, p = 1;
  // a constant nonzero shift gives t = +-inf, p = 0.
  bool degenerate = false;
};

// Two-tailed p for a t statistic with df degrees of freedom.
double t_two_tailed_p(double t, double df);

// Throws InputError on unequal lengths or n < 3.
Correlation pearson(std::span<const double> x, std::span<const double> y);

// Throws InputError on unequal lengths or n < 2.
TTest paired_t_test(std::span<const double> a, std::span<const double> b);

// Entropy in bits of the distribution obtained by normalizing `p`.
// Throws InputError when p is empty, has a negative entry or sums to 0.
double shannon_entropy(std::span<const double> p);

// ---------------------------------------------------------------------------
// Shared report pieces

// `reason` is a stable machine-readable code; `detail` is for humans.
struct Exclusion {
  std::string item;
  std::string reason;
  std::string detail;
};

// Raised when too few items survive exclusion; carries the exclusion list.
class RefusedEvaluation : public InsufficientItemsError {
 public:
  RefusedEvaluation(const std::string& what, std::size_t valid, std::size_t required,
                    std::vector<Exclusion> excluded)
      : InsufficientItemsError(what, valid, required), excluded_(std::move(excluded)) {}
  const std::vector<Exclusion>& excluded() const noexcept { return excluded_; }

 private:
  std::vector<Exclusion> excluded_;
};

// ---------------------------------------------------------------------------
// Association norms

struct Response {
  std::string term;
  double frequency = 0.0;  // relative, in [0, 1]
};

struct AssocNormItem {
  std::string stimulus;
  std::vector<Response> responses;  // descending frequency
};

// TSV: stimulus<TAB>response<TAB>frequency. Items keep first-appearance
// order; responses are stably sorted by descending frequency.
std::vector<AssocNormItem> load_norms(const std::filesystem::path& path);

// Entropy in bits of the observed responses, renormalized. Unobserved mass
// (1 - sum) is ignored. Throws InputError on an empty list or a sum above 1.
double answer_entropy(const AssocNormItem& item);

struct AssocFilter {
  // Keep the ceil(q * n) valid items with the lowest stimulus global weight.
  std::optional<double> weight_quantile;
  // Keep the ceil(q * n) valid items with the lowest answer entropy.
  std::optional<double> entropy_quantile;
};

struct AssocItemResult {
  std::string stimulus;
  double stimulus_weight = 0.0;
  double entropy = 0.0;
  std::array<std::string, 3> top_terms;
  std::array<double, 3> top{};  // cosines for ranks 1..3
  std::array<std::string, 3> bottom_terms;
  std::array<double, 3> bottom{};  // cosines for the three lowest-ranked
  std::array<double, 3> top_frequency{};
  std::array<double, 3> bottom_frequency{};
  double bottom_mean = 0.0;
};

struct AssocReport {
  std::vector<AssocItemResult> items;
  std::vector<Exclusion> excluded;
  std::size_t input_count = 0;
  std::array<double, 4> tier_means{};  // rank 1, rank 2, rank 3, bottom three
  std::array<TTest, 3> adjacent{};     // r1-r2, r2-r3, r3-bottom
  Correlation frequency_cosine;        // pooled over all analyzed pairs
  std::string filter;

  std::string to_json() const;
  std::string to_text() const;
};

inline constexpr std::size_t kMinAssocItems = 5;

// Throws RefusedEvaluation when fewer than kMinAssocItems remain.
AssocReport assoc_test(const vecspace::SemanticSpace& s, const std::vector<AssocNormItem>& norms,
                       const AssocFilter& filter = {});

// ---------------------------------------------------------------------------
// Semantic judgments

struct JudgmentItem {
  std::string story;
  std::string word_a;
  std::string word_b;
  std::map<int, double> mean_rating_by_grade;  // ratings on a 1..5 scale
};

inline constexpr double kRatingMin = 1.0;
inline constexpr double kRatingMax = 5.0;

// TSV: story<TAB>word_a<TAB>word_b<TAB>grade<TAB>mean_rating. Rows for the
// same (story, word_a, word_b) are merged.
std::vector<JudgmentItem> load_judgments(const std::filesystem::path& path);

struct JudgmentPairResult {
  std::string story;
  std::string word_a;
  std::string word_b;
  double cosine = 0.0;
  std::map<int, double> ratings;
};

struct StoryResult {
  std::string story;
  std::size_t pairs = 0;
  std::map<int, Correlation> by_grade;
};

struct JudgmentReport {
  std::vector<JudgmentPairResult> pairs;
  std::vector<StoryResult> stories;
  std::map<int, Correlation> overall;       // all included pairs pooled
  std::map<int, double> mean_story_r;       // mean over non-degenerate stories
  std::vector<Exclusion> excluded;
  std::size_t input_count = 0;

  std::string to_json() const;
  std::string to_text() const;
};

inline constexpr std::size_t kMinStoryPairs = 3;

JudgmentReport judgment_test(const vecspace::SemanticSpace& s,
                             const std::vector<JudgmentItem>& items);

// ---------------------------------------------------------------------------
// Vocabulary test

enum class DefinitionLabel { correct, close, distant, unrelated };

inline constexpr DefinitionLabel kAllLabels[] = {DefinitionLabel::correct, DefinitionLabel::close,
                                                 DefinitionLabel::distant,
                                                 DefinitionLabel::unrelated};

std::string_view to_string(DefinitionLabel l);
std::optional<DefinitionLabel> parse_label(std::string_view s);

struct Definition {
  DefinitionLabel label = DefinitionLabel::correct;
  std::vector<std::string> tokens;
};

// Definitions in presentation order; exactly one per label.
struct VocabItem {
  std::string word;
  std::vector<Definition> definitions;
};

// TSV: word<TAB>label<TAB>definition text. Definition text is tokenized
// with `policy`.
std::vector<VocabItem> load_vocab(const std::filesystem::path& path,
                                  const corpusio::TokenizePolicy& policy = {});

struct VocabItemResult {
  std::string word;
  std::array<double, 4> cosines{};  // indexed by label
  DefinitionLabel chosen = DefinitionLabel::correct;
};

struct VocabReport {
  std::vector<VocabItemResult> items;
  std::array<double, 4> percent{};  // share of items choosing each label, 0..100
  std::vector<Exclusion> excluded;
  std::size_t input_count = 0;
  std::optional<double> weight_cap;

  std::string to_json() const;
  std::string to_text() const;
};

// The chosen label is the argmax of cosine(word, fold_in(definition)); ties
// go to the earlier label in kAllLabels. With weight_cap, only words whose
// global weight is below the cap are scored. Throws InputError when an item
// does not carry exactly one definition per label.
VocabReport vocab_test(const vecspace::SemanticSpace& s, const std::vector<VocabItem>& items,
                       std::optional<double> weight_cap = std::nullopt);

// ---------------------------------------------------------------------------
// Recall

enum class RecallTask { immediate_recall, delayed_recall, summary };

std::string_view to_string(RecallTask t);
std::optional<RecallTask> parse_task(std::string_view s);

struct RecallRecord {
  std::string text_id;
  RecallTask task = RecallTask::immediate_recall;
  std::vector<std::string> source_tokens;
  std::vector<std::string> protocol_tokens;
  long long propositions_recalled = 0;
};

// TSV: text_id<TAB>task<TAB>propositions_recalled<TAB>source_path<TAB>protocol_path.
// Paths resolve against the TSV's directory.
std::vector<RecallRecord> load_recall(const std::filesystem::path& path,
                                      const corpusio::TokenizePolicy& policy = {});

// cosine(fold_in(source), fold_in(protocol)). Throws EmptyProjectionError.
double recall_score(const vecspace::SemanticSpace& s, const RecallRecord& r);

struct RecallGroup {
  std::string text_id;
  RecallTask task = RecallTask::immediate_recall;
  std::vector<double> scores;
  std::vector<double> propositions;
  Correlation correlation;
  std::string note;  // "degenerate variance" when r is undefined
};

struct RecallReport {
  std::vector<RecallGroup> groups;
  std::vector<Exclusion> excluded;
  std::size_t input_count = 0;

  std::string to_json() const;
  std::string to_text() const;
};

inline constexpr std::size_t kMinRecallGroup = 3;

// Groups by (text_id, task) in first-appearance order.
RecallReport recall_correlation(const vecspace::SemanticSpace& s,
                                const std::vector<RecallRecord>& records);

}  // namespace lsakit::evalsuite
