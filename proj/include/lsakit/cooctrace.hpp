#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lsakit/corpusio.hpp"
#include "lsakit/vecspace.hpp"

namespace lsakit::cooctrace {

struct WordPair {
  std::string x;
  std::string y;
  friend bool operator==(const WordPair&, const WordPair&) = default;
};

// TSV: x<TAB>y. Throws InputError on x == y.
std::vector<WordPair> load_pairs(const std::filesystem::path& path);

// `mixed` only receives gains in stride mode, where one rebuild covers
// several paragraphs of possibly different categories.
enum class Category { x_only, y_only, direct_cooc, second_order, third_or_more, mixed };

inline constexpr std::size_t kCategoryCount = 6;
inline constexpr Category kExactCategories[] = {Category::x_only, Category::y_only,
                                                Category::direct_cooc, Category::second_order,
                                                Category::third_or_more};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

// term -> terms it has shared a paragraph with. Symmetric, no self links.
class CoocIndex {
 public:
  void add(const std::vector<std::string>& tokens);

  // nullptr for a term never seen with a partner.
  const std::set<std::string>* partners(std::string_view term) const;
  bool cooccurred(std::string_view a, std::string_view b) const;
  std::size_t size() const noexcept { return links_.size(); }
  const std::map<std::string, std::set<std::string>, std::less<>>& links() const noexcept { return links_; }

  friend bool operator==(const CoocIndex&, const CoocIndex&) = default;

 private:
  std::map<std::string, std::set<std::string>, std::less<>> links_;
};

CoocIndex update_index(CoocIndex idx, const std::vector<std::string>& paragraph);

// Distinct paragraph terms other than x and y that have co-occurred with
// both x and y in `idx`.
std::size_t count_bridges(const WordPair& pair, const std::vector<std::string>& paragraph,
                          const CoocIndex& idx);

inline constexpr std::size_t kMinBridges = 3;

// `idx` must describe the corpus before `paragraph` is appended.
Category classify(const WordPair& pair, const std::vector<std::string>& paragraph,
                  const CoocIndex& idx);

struct TracePoint {
  std::size_t step = 0;  // number of paragraphs in the space
  double similarity = 0.0;
  std::optional<Category> category;  // empty for the starting point
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct GainLedger {
  WordPair pair;
  std::vector<TracePoint> trajectory;
  double initial_similarity = 0.0;
  double final_similarity = 0.0;
  std::array<double, kCategoryCount> gains{};
  std::array<std::size_t, kCategoryCount> events{};
  std::size_t degenerate_steps = 0;  // similarity undefined, recorded as 0

  double gain(Category c) const { return gains[static_cast<std::size_t>(c)]; }
  std::size_t event_count(Category c) const { return events[static_cast<std::size_t>(c)]; }
  double total_gain() const;
  // |sum of gains - (final - initial)|
  double telescoping_error() const;

  friend bool operator==(const GainLedger&, const GainLedger&) = default;
};

struct TraceOptions {
  std::size_t start = 2;
  std::size_t end = 0;
  std::size_t k = 300;
  std::uint64_t seed = 0;
  vecspace::Scaling scaling = vecspace::Scaling::sigma;
  vecspace::SvdMethod method = vecspace::SvdMethod::automatic;
  // 1 = exact mode. s > 1 rebuilds every s steps and books each rebuild's
  // delta under Category::mixed.
  std::size_t stride = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::size_t checkpoint_every = 0;  // steps; 0 = never
  // Stop after this many steps in one invocation (0 = run to the end). The
  // checkpoint, if any, is written first so a later call can resume.
  std::size_t max_steps = 0;
};

inline constexpr int kCheckpointVersion = 1;

// Replays paragraphs (start, end] one at a time. Paragraph t (1-based) is
// classified against the index of paragraphs 1..t-1. The space at every
// step is rebuilt from scratch with min_count forced to 1. When a
// compatible checkpoint exists the run resumes from it.
std::vector<GainLedger> run_trace(const corpusio::Corpus& c, const std::vector<WordPair>& pairs,
                                  const TraceOptions& options);

struct TraceReport {
  std::vector<GainLedger> ledgers;
  std::array<double, kCategoryCount> category_means{};
  std::size_t zero_direct_pairs = 0;
  double max_telescoping_error = 0.0;
  bool telescoping_ok = true;
  bool approximate = false;  // some gains sit in the mixed bucket

  std::string to_json() const;
  std::string to_text() const;
  // step<TAB>pair<TAB>similarity<TAB>category
  std::string trajectory_tsv() const;
};

inline constexpr double kTelescopingTolerance = 1e-9;

TraceReport trace_report(const std::vector<GainLedger>& ledgers,
                         double tolerance = kTelescopingTolerance);

}  // namespace lsakit::cooctrace
