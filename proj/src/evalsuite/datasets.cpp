#include <algorithm>
#include <map>

#include "lsakit/evalsuite.hpp"
#include "util/text.hpp"

namespace lsakit::evalsuite {

namespace {

struct Row {
  std::vector<std::string_view> cols;
  std::string at;
};

// Data rows of a TSV file with at least `min_cols` columns.
template <class F>
void for_each_row(const std::filesystem::path& path, std::size_t min_cols, std::string_view expected,
                  F&& f) {
  std::size_t line_no = 0;
  for (const auto& line : util::read_lines(path)) {
    ++line_no;
    if (util::is_skippable(line)) continue;
    Row row{util::split(line, '\t'), util::where(path, line_no)};
    if (row.cols.size() < min_cols)
      throw InputError(row.at + ": expected " + std::string(expected));
    f(row);
  }
}

std::string word(std::string_view s) { return corpusio::normalize(util::trim(s)); }

double number(const Row& row, std::size_t col, std::string_view what) {
  const auto v = util::parse_double(row.cols[col]);
  if (!v) throw InputError(row.at + ": bad " + std::string(what) + " '" + std::string(row.cols[col]) + "'");
  return *v;
}

}  // namespace

std::vector<AssocNormItem> load_norms(const std::filesystem::path& path) {
  std::vector<AssocNormItem> items;
  std::map<std::string, std::size_t> index;
  for_each_row(path, 3, "stimulus<TAB>response<TAB>frequency", [&](const Row& row) {
    const auto stimulus = word(row.cols[0]);
    const auto response = word(row.cols[1]);
    const double f = number(row, 2, "frequency");
    if (stimulus.empty() || response.empty()) throw InputError(row.at + ": empty word");
    if (f < 0.0 || f > 1.0) throw InputError(row.at + ": frequency outside [0, 1]");
    auto [it, fresh] = index.emplace(stimulus, items.size());
    if (fresh) items.push_back({stimulus, {}});
    items[it->second].responses.push_back({response, f});
  });
  for (auto& item : items)
    std::stable_sort(item.responses.begin(), item.responses.end(),
                     [](const Response& a, const Response& b) { return a.frequency > b.frequency; });
  return items;
}

std::vector<JudgmentItem> load_judgments(const std::filesystem::path& path) {
  std::vector<JudgmentItem> items;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  for_each_row(path, 5, "story<TAB>word_a<TAB>word_b<TAB>grade<TAB>mean_rating", [&](const Row& row) {
    std::string story(util::trim(row.cols[0]));
    auto a = word(row.cols[1]);
    auto b = word(row.cols[2]);
    const auto grade = util::parse_int(row.cols[3]);
    if (!grade) throw InputError(row.at + ": bad grade '" + std::string(row.cols[3]) + "'");
    const double rating = number(row, 4, "rating");
    if (rating < kRatingMin || rating > kRatingMax) throw InputError(row.at + ": rating outside 1..5");
    if (a.empty() || b.empty()) throw InputError(row.at + ": empty word");
    auto [it, fresh] = index.emplace(std::tuple{story, a, b}, items.size());
    if (fresh) items.push_back({story, a, b, {}});
    auto& ratings = items[it->second].mean_rating_by_grade;
    if (!ratings.emplace(static_cast<int>(*grade), rating).second)
      throw InputError(row.at + ": duplicate grade for this pair");
  });
  return items;
}

std::string_view to_string(DefinitionLabel l) {
  switch (l) {
    case DefinitionLabel::correct: return "correct";
    case DefinitionLabel::close: return "close";
    case DefinitionLabel::distant: return "distant";
    case DefinitionLabel::unrelated: return "unrelated";
  }
  return "?";
}

std::optional<DefinitionLabel> parse_label(std::string_view s) {
  for (auto l : kAllLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::vector<VocabItem> load_vocab(const std::filesystem::path& path,
                                  const corpusio::TokenizePolicy& policy) {
  std::vector<VocabItem> items;
  std::map<std::string, std::size_t> index;
  for_each_row(path, 3, "word<TAB>label<TAB>definition", [&](const Row& row) {
    const auto w = word(row.cols[0]);
    const auto label = parse_label(util::trim(row.cols[1]));
    if (w.empty()) throw InputError(row.at + ": empty word");
    if (!label) throw InputError(row.at + ": unknown label '" + std::string(row.cols[1]) + "'");
    auto [it, fresh] = index.emplace(w, items.size());
    if (fresh) items.push_back({w, {}});
    auto& defs = items[it->second].definitions;
    for (const auto& d : defs)
      if (d.label == *label) throw InputError(row.at + ": second '" + std::string(to_string(*label)) + "' definition");
    defs.push_back({*label, corpusio::tokenize(row.cols[2], policy).tokens});
  });
  for (const auto& item : items)
    if (item.definitions.size() != 4)
      throw InputError(path.string() + ": item '" + item.word + "' needs exactly four definitions");
  return items;
}

std::string_view to_string(RecallTask t) {
  switch (t) {
    case RecallTask::immediate_recall: return "immediate_recall";
    case RecallTask::delayed_recall: return "delayed_recall";
    case RecallTask::summary: return "summary";
  }
  return "?";
}

std::optional<RecallTask> parse_task(std::string_view s) {
  for (auto t : {RecallTask::immediate_recall, RecallTask::delayed_recall, RecallTask::summary})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::vector<RecallRecord> load_recall(const std::filesystem::path& path,
                                      const corpusio::TokenizePolicy& policy) {
  const auto base = path.parent_path();
  std::map<std::filesystem::path, std::vector<std::string>> cache;
  auto tokens_of = [&](std::string_view rel) -> const std::vector<std::string>& {
    std::filesystem::path p{std::string(util::trim(rel))};
    if (p.is_relative()) p = base / p;
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, corpusio::tokenize(util::read_file(p), policy).tokens).first;
    return it->second;
  };
  std::vector<RecallRecord> out;
  for_each_row(path, 5, "text_id<TAB>task<TAB>propositions<TAB>source<TAB>protocol", [&](const Row& row) {
    RecallRecord r;
    r.text_id = std::string(util::trim(row.cols[0]));
    const auto task = parse_task(util::trim(row.cols[1]));
    if (!task) throw InputError(row.at + ": unknown task '" + std::string(row.cols[1]) + "'");
    r.task = *task;
    const auto n = util::parse_int(row.cols[2]);
    if (!n || *n < 0) throw InputError(row.at + ": propositions_recalled must be an integer >= 0");
    r.propositions_recalled = *n;
    r.source_tokens = tokens_of(row.cols[3]);
    r.protocol_tokens = tokens_of(row.cols[4]);
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace lsakit::evalsuite
