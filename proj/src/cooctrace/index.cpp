#include <algorithm>

#include "lsakit/cooctrace.hpp"
#include "util/text.hpp"

namespace lsakit::cooctrace {

std::vector<WordPair> load_pairs(const std::filesystem::path& path) {
  std::vector<WordPair> out;
  std::size_t line_no = 0;
  for (const auto& line : util::read_lines(path)) {
    ++line_no;
    if (util::is_skippable(line)) continue;
    const auto cols = util::split(line, '\t');
    const auto at = util::where(path, line_no);
    if (cols.size() < 2) throw InputError(at + ": expected x<TAB>y");
    WordPair p{corpusio::normalize(util::trim(cols[0])), corpusio::normalize(util::trim(cols[1]))};
    if (p.x.empty() || p.y.empty()) throw InputError(at + ": empty word");
    if (p.x == p.y) throw InputError(at + ": pair of identical words '" + p.x + "'");
    out.push_back(std::move(p));
  }
  if (out.empty()) throw InputError("no pairs in " + path.string());
  return out;
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::x_only: return "x_only";
    case Category::y_only: return "y_only";
    case Category::direct_cooc: return "direct_cooc";
    case Category::second_order: return "second_order";
    case Category::third_or_more: return "third_or_more";
    case Category::mixed: return "mixed";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const auto c = static_cast<Category>(i);
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

void CoocIndex::add(const std::vector<std::string>& tokens) {
  std::vector<std::string> types(tokens);
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = i + 1; j < types.size(); ++j) {
      links_[types[i]].insert(types[j]);
      links_[types[j]].insert(types[i]);
    }
}

const std::set<std::string>* CoocIndex::partners(std::string_view term) const {
  const auto it = links_.find(term);
  return it == links_.end() ? nullptr : &it->second;
}

bool CoocIndex::cooccurred(std::string_view a, std::string_view b) const {
  const auto* p = partners(a);
  return p && p->count(std::string(b)) > 0;
}

CoocIndex update_index(CoocIndex idx, const std::vector<std::string>& paragraph) {
  idx.add(paragraph);
  return idx;
}

std::size_t count_bridges(const WordPair& pair, const std::vector<std::string>& paragraph,
                          const CoocIndex& idx) {
  std::set<std::string_view> seen;
  std::size_t n = 0;
  for (const auto& w : paragraph) {
    if (w == pair.x || w == pair.y || !seen.insert(w).second) continue;
    if (idx.cooccurred(w, pair.x) && idx.cooccurred(w, pair.y)) ++n;
  }
  return n;
}

Category classify(const WordPair& pair, const std::vector<std::string>& paragraph,
                  const CoocIndex& idx) {
  const bool has_x = std::find(paragraph.begin(), paragraph.end(), pair.x) != paragraph.end();
  const bool has_y = std::find(paragraph.begin(), paragraph.end(), pair.y) != paragraph.end();
  if (has_x && has_y) return Category::direct_cooc;
  if (has_x) return Category::x_only;
  if (has_y) return Category::y_only;
  return count_bridges(pair, paragraph, idx) >= kMinBridges ? Category::second_order
                                                            : Category::third_or_more;
}

}  // namespace lsakit::cooctrace
