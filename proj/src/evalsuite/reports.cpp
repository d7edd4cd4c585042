#include <json.hpp>
#include <set>

#include "lsakit/evalsuite.hpp"
#include "util/table.hpp"

namespace lsakit::evalsuite {

using nlohmann::json;
using util::fixed;
using util::Table;

namespace {

json to_j(const Correlation& c) {
  return {{"r", c.r}, {"n", c.n}, {"p", c.p}, {"degenerate", c.degenerate}};
}

json to_j(const TTest& t) {
  return {{"t", t.t}, {"df", t.df}, {"p", t.p}, {"degenerate", t.degenerate}};
}

json to_j(const std::vector<Exclusion>& ex) {
  json out = json::array();
  for (const auto& e : ex) out.push_back({{"item", e.item}, {"reason", e.reason}, {"detail", e.detail}});
  return out;
}

std::string corr_text(const Correlation& c) {
  if (c.degenerate) return "r undefined (degenerate variance), n = " + std::to_string(c.n);
  return "r(" + std::to_string(c.n) + ") = " + fixed(c.r) + ", p = " + fixed(c.p, 4);
}

std::string excluded_text(const std::vector<Exclusion>& ex, std::size_t input) {
  std::string out = "included " + std::to_string(input - ex.size()) + " of " + std::to_string(input) +
                    ", excluded " + std::to_string(ex.size()) + "\n";
  if (ex.empty()) return out;
  Table t({"excluded", "reason", "detail"});
  for (const auto& e : ex) t.add({e.item, e.reason, e.detail});
  return out + t.render();
}

}  // namespace

std::string AssocReport::to_json() const {
  json j;
  j["protocol"] = "assoc";
  j["filter"] = filter;
  j["input_count"] = input_count;
  json rows = json::array();
  for (const auto& r : items)
    rows.push_back({{"stimulus", r.stimulus},
                    {"stimulus_weight", r.stimulus_weight},
                    {"entropy", r.entropy},
                    {"top_terms", r.top_terms},
                    {"top", r.top},
                    {"top_frequency", r.top_frequency},
                    {"bottom_terms", r.bottom_terms},
                    {"bottom", r.bottom},
                    {"bottom_frequency", r.bottom_frequency},
                    {"bottom_mean", r.bottom_mean}});
  j["items"] = rows;
  j["tier_means"] = {{"rank1", tier_means[0]}, {"rank2", tier_means[1]}, {"rank3", tier_means[2]},
                     {"bottom3", tier_means[3]}};
  j["adjacent_t_tests"] = {{"rank1_rank2", to_j(adjacent[0])},
                           {"rank2_rank3", to_j(adjacent[1])},
                           {"rank3_bottom3", to_j(adjacent[2])}};
  j["frequency_cosine"] = to_j(frequency_cosine);
  j["excluded"] = to_j(excluded);
  return j.dump(2) + "\n";
}

std::string AssocReport::to_text() const {
  std::string out = "Association norms (filter: " + filter + ")\n\n";
  Table t({"response rank", "mean cosine"});
  t.add({"1", fixed(tier_means[0])});
  t.add({"2", fixed(tier_means[1])});
  t.add({"3", fixed(tier_means[2])});
  t.add({"3 lowest", fixed(tier_means[3])});
  out += t.render() + "\n";
  Table tt({"comparison", "t", "df", "p"});
  const char* names[] = {"1 vs 2", "2 vs 3", "3 vs lowest"};
  for (std::size_t i = 0; i < 3; ++i)
    tt.add({names[i], fixed(adjacent[i].t), std::to_string(adjacent[i].df), fixed(adjacent[i].p, 4)});
  out += tt.render() + "\n";
  out += "frequency vs cosine: " + corr_text(frequency_cosine) + "\n";
  out += excluded_text(excluded, input_count);
  return out;
}

std::string JudgmentReport::to_json() const {
  json j;
  j["protocol"] = "judgment";
  j["input_count"] = input_count;
  json pj = json::array();
  for (const auto& p : pairs) {
    json ratings = json::object();
    for (const auto& [g, r] : p.ratings) ratings[std::to_string(g)] = r;
    pj.push_back({{"story", p.story}, {"word_a", p.word_a}, {"word_b", p.word_b}, {"cosine", p.cosine},
                  {"ratings", ratings}});
  }
  j["pairs"] = pj;
  json sj = json::array();
  for (const auto& s : stories) {
    json g = json::object();
    for (const auto& [grade, c] : s.by_grade) g[std::to_string(grade)] = to_j(c);
    sj.push_back({{"story", s.story}, {"pairs", s.pairs}, {"by_grade", g}});
  }
  j["stories"] = sj;
  json ov = json::object();
  for (const auto& [grade, c] : overall) ov[std::to_string(grade)] = to_j(c);
  j["overall"] = ov;
  json ms = json::object();
  for (const auto& [grade, r] : mean_story_r) ms[std::to_string(grade)] = r;
  j["mean_story_r"] = ms;
  j["excluded"] = to_j(excluded);
  return j.dump(2) + "\n";
}

std::string JudgmentReport::to_text() const {
  std::set<int> grades;
  for (const auto& s : stories)
    for (const auto& [g, c] : s.by_grade) grades.insert(g);
  std::vector<std::string> header{"story", "pairs"};
  for (int g : grades) header.push_back("grade " + std::to_string(g));
  Table t(header);
  for (const auto& s : stories) {
    std::vector<std::string> row{s.story, std::to_string(s.pairs)};
    for (int g : grades) {
      const auto it = s.by_grade.find(g);
      row.push_back(it == s.by_grade.end() ? "-" : it->second.degenerate ? "degenerate" : fixed(it->second.r, 2));
    }
    t.add(row);
  }
  std::vector<std::string> mean_row{"mean", ""};
  for (int g : grades) {
    const auto it = mean_story_r.find(g);
    mean_row.push_back(it == mean_story_r.end() ? "-" : fixed(it->second, 2));
  }
  t.add(mean_row);
  std::string out = "Semantic judgments: r between mean rating and cosine\n\n" + t.render() + "\n";
  for (const auto& [g, c] : overall) out += "pooled, grade " + std::to_string(g) + ": " + corr_text(c) + "\n";
  out += excluded_text(excluded, input_count);
  return out;
}

std::string VocabReport::to_json() const {
  json j;
  j["protocol"] = "vocab";
  j["input_count"] = input_count;
  j["weight_cap"] = weight_cap ? json(*weight_cap) : json(nullptr);
  json rows = json::array();
  for (const auto& r : items) {
    json c = json::object();
    for (auto l : kAllLabels) c[std::string(to_string(l))] = r.cosines[static_cast<std::size_t>(l)];
    rows.push_back({{"word", r.word}, {"cosines", c}, {"chosen", std::string(to_string(r.chosen))}});
  }
  j["items"] = rows;
  json pct = json::object();
  for (auto l : kAllLabels) pct[std::string(to_string(l))] = percent[static_cast<std::size_t>(l)];
  j["percent"] = pct;
  j["excluded"] = to_j(excluded);
  return j.dump(2) + "\n";
}

std::string VocabReport::to_text() const {
  Table t({"definition", "chosen %"});
  for (auto l : kAllLabels) t.add({std::string(to_string(l)), fixed(percent[static_cast<std::size_t>(l)], 1)});
  std::string out = "Vocabulary test (" + std::to_string(items.size()) + " items";
  if (weight_cap) out += ", weight < " + fixed(*weight_cap, 2);
  out += ")\n\n" + t.render() + "\n";
  out += excluded_text(excluded, input_count);
  return out;
}

std::string RecallReport::to_json() const {
  json j;
  j["protocol"] = "recall";
  j["input_count"] = input_count;
  json gs = json::array();
  for (const auto& g : groups)
    gs.push_back({{"text_id", g.text_id},
                  {"task", std::string(to_string(g.task))},
                  {"scores", g.scores},
                  {"propositions", g.propositions},
                  {"correlation", to_j(g.correlation)},
                  {"note", g.note}});
  j["groups"] = gs;
  j["excluded"] = to_j(excluded);
  return j.dump(2) + "\n";
}

std::string RecallReport::to_text() const {
  Table t({"text", "task", "n", "r", "p", "note"});
  for (const auto& g : groups)
    t.add({g.text_id, std::string(to_string(g.task)), std::to_string(g.correlation.n),
           g.correlation.degenerate ? "-" : fixed(g.correlation.r, 2),
           g.correlation.degenerate ? "-" : fixed(g.correlation.p, 4), g.note});
  return "Recall: r between cosine(text, production) and propositions recalled\n\n" + t.render() + "\n" +
         excluded_text(excluded, input_count);
}

}  // namespace lsakit::evalsuite
