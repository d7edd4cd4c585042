#include <algorithm>
#include <cmath>

#include "cooctrace/ledger_json.hpp"
#include "lsakit/cooctrace.hpp"
#include "util/table.hpp"

namespace lsakit::cooctrace {

using nlohmann::json;

TraceReport trace_report(const std::vector<GainLedger>& ledgers, double tolerance) {
  if (ledgers.empty()) throw InputError("trace report needs at least one ledger");
  TraceReport r;
  r.ledgers = ledgers;
  for (const auto& l : ledgers) {
    for (std::size_t i = 0; i < kCategoryCount; ++i) r.category_means[i] += l.gains[i];
    if (l.event_count(Category::direct_cooc) == 0) ++r.zero_direct_pairs;
    r.max_telescoping_error = std::max(r.max_telescoping_error, l.telescoping_error());
    if (l.gain(Category::mixed) != 0.0) r.approximate = true;
    for (const auto& p : l.trajectory)
      if (p.category == Category::mixed) r.approximate = true;
  }
  for (auto& m : r.category_means) m /= static_cast<double>(ledgers.size());
  r.telescoping_ok = r.max_telescoping_error <= tolerance;
  return r;
}

std::string TraceReport::to_json() const {
  json j;
  json ls = json::array();
  for (const auto& l : ledgers) ls.push_back(detail::to_json(l));
  json means = json::object();
  for (std::size_t i = 0; i < kCategoryCount; ++i)
    means[std::string(to_string(static_cast<Category>(i)))] = category_means[i];
  j["ledgers"] = ls;
  j["category_means"] = means;
  j["zero_direct_pairs"] = zero_direct_pairs;
  j["max_telescoping_error"] = max_telescoping_error;
  j["telescoping"] = telescoping_ok ? "PASS" : "FAIL";
  j["approximate"] = approximate;
  return j.dump(2) + "\n";
}

std::string TraceReport::to_text() const {
  std::vector<std::string> header{"pair", "initial", "final"};
  std::vector<Category> cats(std::begin(kExactCategories), std::end(kExactCategories));
  if (approximate) cats.push_back(Category::mixed);
  for (auto c : cats) header.emplace_back(to_string(c));
  util::Table t(header);
  for (const auto& l : ledgers) {
    std::vector<std::string> row{l.pair.x + "/" + l.pair.y, util::fixed(l.initial_similarity),
                                 util::fixed(l.final_similarity)};
    for (auto c : cats) row.push_back(util::fixed(l.gain(c)));
    t.add(row);
  }
  std::vector<std::string> mean{"mean", "", ""};
  for (auto c : cats) mean.push_back(util::fixed(category_means[static_cast<std::size_t>(c)]));
  t.add(mean);

  util::Table ev({"pair", "x_only", "y_only", "direct_cooc", "second_order", "third_or_more"});
  for (const auto& l : ledgers) {
    std::vector<std::string> row{l.pair.x + "/" + l.pair.y};
    for (auto c : kExactCategories) row.push_back(std::to_string(l.event_count(c)));
    ev.add(row);
  }
  std::string out = "Similarity gains by paragraph category\n\n" + t.render() + "\nParagraph counts\n\n" +
                    ev.render() + "\n";
  out += "pairs with no direct co-occurrence: " + std::to_string(zero_direct_pairs) + " of " +
         std::to_string(ledgers.size()) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", max_telescoping_error);
  out += std::string("telescoping check: ") + (telescoping_ok ? "PASS" : "FAIL") + " (max error " + buf + ")\n";
  if (approximate) out += "stride mode: rebuild deltas spanning several paragraphs are booked as mixed\n";
  return out;
}

std::string TraceReport::trajectory_tsv() const {
  std::string out = "step\tpair\tsimilarity\tcategory\n";
  char buf[64];
  for (const auto& l : ledgers)
    for (const auto& p : l.trajectory) {
      std::snprintf(buf, sizeof buf, "%.9f", p.similarity);
      out += std::to_string(p.step) + "\t" + l.pair.x + "/" + l.pair.y + "\t" + buf + "\t" +
             (p.category ? std::string(to_string(*p.category)) : std::string("start")) + "\n";
    }
  return out;
}

}  // namespace lsakit::cooctrace
