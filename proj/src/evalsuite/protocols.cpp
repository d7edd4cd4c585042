#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lsakit/evalsuite.hpp"

namespace lsakit::evalsuite {

using vecspace::SemanticSpace;

namespace {

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string fmt_q(double q) {
  std::string s = std::to_string(q);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

void check_quantile(double q, std::string_view name) {
  if (!(q > 0.0 && q <= 1.0)) throw InputError(std::string(name) + " must lie in (0, 1]");
}

// Indices (into `values`) of the ceil(q * n) smallest values; ties keep input order.
std::vector<std::size_t> lowest_quantile(const std::vector<double>& values, double q) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const auto keep = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()) - 1e-9));
  order.resize(std::min(keep, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

// cosine between two vocabulary terms, or nullopt with the reason filled in.
std::optional<double> term_cosine(const SemanticSpace& s, const std::string& a, const std::string& b,
                                  std::string& reason, std::string& detail) {
  for (const auto* w : {&a, &b})
    if (!s.contains(*w)) {
      reason = "out_of_vocabulary";
      detail = *w;
      return std::nullopt;
    }
  try {
    return vecspace::cosine(vecspace::term_vector(s, a), vecspace::term_vector(s, b));
  } catch (const DegenerateVectorError&) {
    reason = "degenerate_vector";
    detail = a + "/" + b;
    return std::nullopt;
  }
}

}  // namespace

double answer_entropy(const AssocNormItem& item) {
  if (item.responses.empty()) throw InputError("answer entropy: '" + item.stimulus + "' has no responses");
  std::vector<double> f;
  double total = 0;
  for (const auto& r : item.responses) {
    f.push_back(r.frequency);
    total += r.frequency;
  }
  if (total > 1.0 + 1e-9) throw InputError("answer entropy: frequencies of '" + item.stimulus + "' sum above 1");
  return shannon_entropy(f);
}

AssocReport assoc_test(const SemanticSpace& s, const std::vector<AssocNormItem>& norms,
                       const AssocFilter& filter) {
  AssocReport rep;
  rep.input_count = norms.size();
  std::vector<AssocItemResult> valid;
  for (const auto& item : norms) {
    const auto& rs = item.responses;
    if (rs.size() < 6) {
      rep.excluded.push_back({item.stimulus, "too_few_responses", std::to_string(rs.size()) + " responses"});
      continue;
    }
    for (std::size_t i = 1; i < rs.size(); ++i)
      if (rs[i].frequency > rs[i - 1].frequency)
        throw InputError("responses of '" + item.stimulus + "' are not in descending frequency");
    AssocItemResult res;
    res.stimulus = item.stimulus;
    res.entropy = answer_entropy(item);
    std::string reason, detail;
    bool ok = s.contains(item.stimulus);
    if (!ok) {
      reason = "out_of_vocabulary";
      detail = item.stimulus;
    }
    for (std::size_t i = 0; ok && i < 3; ++i) {
      const auto& top = rs[i];
      const auto& bot = rs[rs.size() - 3 + i];
      const auto ct = term_cosine(s, item.stimulus, top.term, reason, detail);
      const auto cb = ct ? term_cosine(s, item.stimulus, bot.term, reason, detail) : std::nullopt;
      if (!ct || !cb) {
        ok = false;
        break;
      }
      res.top_terms[i] = top.term;
      res.top[i] = *ct;
      res.top_frequency[i] = top.frequency;
      res.bottom_terms[i] = bot.term;
      res.bottom[i] = *cb;
      res.bottom_frequency[i] = bot.frequency;
    }
    if (!ok) {
      rep.excluded.push_back({item.stimulus, reason, detail});
      continue;
    }
    res.stimulus_weight = s.stats(*s.index_of(item.stimulus)).global_weight;
    res.bottom_mean = (res.bottom[0] + res.bottom[1] + res.bottom[2]) / 3.0;
    valid.push_back(std::move(res));
  }

  std::vector<bool> keep(valid.size(), true);
  std::vector<std::string> parts;
  auto apply = [&](std::optional<double> q, std::string_view name, auto value, std::string_view code) {
    if (!q) return;
    check_quantile(*q, name);
    parts.push_back(std::string(name) + "=" + fmt_q(*q));
    std::vector<double> values;
    for (const auto& r : valid) values.push_back(value(r));
    std::vector<bool> in(valid.size(), false);
    for (auto i : lowest_quantile(values, *q)) in[i] = true;
    for (std::size_t i = 0; i < valid.size(); ++i)
      if (!in[i] && keep[i]) {
        keep[i] = false;
        rep.excluded.push_back({valid[i].stimulus, std::string(code), "outside the lowest " + fmt_q(*q) + " quantile"});
      }
  };
  apply(filter.weight_quantile, "weight_quantile", [](const AssocItemResult& r) { return r.stimulus_weight; },
        "weight_filter");
  apply(filter.entropy_quantile, "entropy_quantile", [](const AssocItemResult& r) { return r.entropy; },
        "entropy_filter");
  rep.filter = parts.empty() ? "none" : parts.size() == 1 ? parts[0] : parts[0] + "," + parts[1];
  for (std::size_t i = 0; i < valid.size(); ++i)
    if (keep[i]) rep.items.push_back(std::move(valid[i]));

  if (rep.items.size() < kMinAssocItems)
    throw RefusedEvaluation("association test", rep.items.size(), kMinAssocItems, rep.excluded);

  std::array<std::vector<double>, 4> tiers;
  std::vector<double> freq, cos;
  for (const auto& r : rep.items) {
    for (std::size_t i = 0; i < 3; ++i) {
      tiers[i].push_back(r.top[i]);
      freq.push_back(r.top_frequency[i]);
      cos.push_back(r.top[i]);
    }
    tiers[3].push_back(r.bottom_mean);
    for (std::size_t i = 0; i < 3; ++i) {
      freq.push_back(r.bottom_frequency[i]);
      cos.push_back(r.bottom[i]);
    }
  }
  for (std::size_t t = 0; t < 4; ++t) rep.tier_means[t] = mean_of(tiers[t]);
  for (std::size_t t = 0; t < 3; ++t) rep.adjacent[t] = paired_t_test(tiers[t], tiers[t + 1]);
  rep.frequency_cosine = pearson(freq, cos);
  return rep;
}

JudgmentReport judgment_test(const SemanticSpace& s, const std::vector<JudgmentItem>& items) {
  JudgmentReport rep;
  rep.input_count = items.size();
  std::vector<std::string> story_order;
  std::map<std::string, std::vector<JudgmentPairResult>> by_story;
  for (const auto& it : items) {
    for (const auto& [grade, rating] : it.mean_rating_by_grade)
      if (rating < kRatingMin || rating > kRatingMax)
        throw InputError("rating outside 1..5 for " + it.word_a + "/" + it.word_b);
    const std::string label = it.story + ":" + it.word_a + "/" + it.word_b;
    std::string reason, detail;
    const auto c = term_cosine(s, it.word_a, it.word_b, reason, detail);
    if (!c) {
      rep.excluded.push_back({label, reason, detail});
      continue;
    }
    if (!by_story.count(it.story)) story_order.push_back(it.story);
    by_story[it.story].push_back({it.story, it.word_a, it.word_b, *c, it.mean_rating_by_grade});
  }

  std::map<int, std::pair<std::vector<double>, std::vector<double>>> pooled;
  std::map<int, std::vector<double>> story_rs;
  for (const auto& story : story_order) {
    auto& pairs = by_story[story];
    if (pairs.size() < kMinStoryPairs) {
      for (const auto& p : pairs)
        rep.excluded.push_back({p.story + ":" + p.word_a + "/" + p.word_b, "story_too_small",
                                std::to_string(pairs.size()) + " valid pairs in story"});
      continue;
    }
    StoryResult sr{story, pairs.size(), {}};
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> local;
    for (const auto& p : pairs)
      for (const auto& [grade, rating] : p.ratings) {
        local[grade].first.push_back(rating);
        local[grade].second.push_back(p.cosine);
        pooled[grade].first.push_back(rating);
        pooled[grade].second.push_back(p.cosine);
      }
    for (const auto& [grade, xy] : local) {
      if (xy.first.size() < kMinStoryPairs) continue;
      const auto c = pearson(xy.first, xy.second);
      sr.by_grade[grade] = c;
      if (!c.degenerate) story_rs[grade].push_back(c.r);
    }
    rep.stories.push_back(std::move(sr));
    for (auto& p : pairs) rep.pairs.push_back(std::move(p));
  }
  if (rep.stories.empty()) throw RefusedEvaluation("judgment test", 0, 1, rep.excluded);
  for (const auto& [grade, xy] : pooled)
    if (xy.first.size() >= 3) rep.overall[grade] = pearson(xy.first, xy.second);
  for (const auto& [grade, rs] : story_rs) rep.mean_story_r[grade] = mean_of(rs);
  return rep;
}

VocabReport vocab_test(const SemanticSpace& s, const std::vector<VocabItem>& items,
                       std::optional<double> weight_cap) {
  VocabReport rep;
  rep.input_count = items.size();
  rep.weight_cap = weight_cap;
  std::array<std::size_t, 4> counts{};
  for (const auto& item : items) {
    std::array<int, 4> seen{};
    for (const auto& d : item.definitions) ++seen[static_cast<std::size_t>(d.label)];
    if (item.definitions.size() != 4 || std::any_of(seen.begin(), seen.end(), [](int n) { return n != 1; }))
      throw InputError("vocabulary item '" + item.word + "' needs exactly one definition per label");

    const auto idx = s.index_of(item.word);
    if (!idx) {
      rep.excluded.push_back({item.word, "unknown_word", item.word});
      continue;
    }
    const double g = s.stats(*idx).global_weight;
    if (weight_cap && !(g < *weight_cap)) {
      rep.excluded.push_back({item.word, "weight_cap", "global weight " + std::to_string(g)});
      continue;
    }
    const vecspace::Vector wv = vecspace::term_vector(s, item.word);
    VocabItemResult res{item.word, {}, DefinitionLabel::correct};
    std::string reason;
    std::string detail;
    for (const auto& d : item.definitions) {
      try {
        res.cosines[static_cast<std::size_t>(d.label)] =
            vecspace::cosine(wv, vecspace::fold_in(s, d.tokens).vector);
      } catch (const EmptyProjectionError&) {
        reason = "empty_definition";
      } catch (const DegenerateVectorError&) {
        reason = "degenerate_vector";
      }
      if (!reason.empty()) {
        detail = std::string(to_string(d.label));
        break;
      }
    }
    if (!reason.empty()) {
      rep.excluded.push_back({item.word, reason, detail});
      continue;
    }
    // argmax in presentation order; ties resolved by label rank, never by position
    bool first = true;
    for (const auto& d : item.definitions) {
      const auto li = static_cast<std::size_t>(d.label);
      const auto ci = static_cast<std::size_t>(res.chosen);
      if (first || res.cosines[li] > res.cosines[ci] || (res.cosines[li] == res.cosines[ci] && li < ci))
        res.chosen = d.label;
      first = false;
    }
    ++counts[static_cast<std::size_t>(res.chosen)];
    rep.items.push_back(std::move(res));
  }
  if (rep.items.empty()) throw RefusedEvaluation("vocabulary test", 0, 1, rep.excluded);
  for (std::size_t l = 0; l < 4; ++l)
    rep.percent[l] = 100.0 * static_cast<double>(counts[l]) / static_cast<double>(rep.items.size());
  return rep;
}

double recall_score(const SemanticSpace& s, const RecallRecord& r) {
  return vecspace::cosine(vecspace::fold_in(s, r.source_tokens).vector,
                          vecspace::fold_in(s, r.protocol_tokens).vector);
}

RecallReport recall_correlation(const SemanticSpace& s, const std::vector<RecallRecord>& records) {
  RecallReport rep;
  rep.input_count = records.size();
  std::vector<RecallGroup> groups;
  std::map<std::pair<std::string, RecallTask>, std::size_t> index;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string label = r.text_id + "/" + std::string(to_string(r.task)) + "#" + std::to_string(i);
    double score = 0;
    try {
      score = recall_score(s, r);
    } catch (const EmptyProjectionError&) {
      rep.excluded.push_back({label, "empty_projection", "source or protocol has no vocabulary term"});
      continue;
    } catch (const DegenerateVectorError&) {
      rep.excluded.push_back({label, "degenerate_vector", "source or protocol projects to zero"});
      continue;
    }
    auto [it, fresh] = index.emplace(std::pair{r.text_id, r.task}, groups.size());
    if (fresh) {
      groups.push_back({r.text_id, r.task, {}, {}, {}, {}});
      labels.emplace_back();
    }
    groups[it->second].scores.push_back(score);
    groups[it->second].propositions.push_back(static_cast<double>(r.propositions_recalled));
    labels[it->second].push_back(label);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& grp = groups[g];
    if (grp.scores.size() < kMinRecallGroup) {
      for (const auto& l : labels[g])
        rep.excluded.push_back({l, "group_too_small", std::to_string(grp.scores.size()) + " records in group"});
      continue;
    }
    grp.correlation = pearson(grp.scores, grp.propositions);
    if (grp.correlation.degenerate) grp.note = "degenerate variance";
    rep.groups.push_back(std::move(grp));
  }
  return rep;
}

}  // namespace lsakit::evalsuite
