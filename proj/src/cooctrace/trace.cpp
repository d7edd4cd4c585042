#include <cstdio>
#include <fstream>
#include <set>

#include "cooctrace/ledger_json.hpp"
#include "lsakit/cooctrace.hpp"
#include "util/hash.hpp"
#include "util/text.hpp"

namespace lsakit::cooctrace {

using nlohmann::json;

double GainLedger::total_gain() const {
  double s = 0;
  for (double g : gains) s += g;
  return s;
}

double GainLedger::telescoping_error() const {
  return std::abs(total_gain() - (final_similarity - initial_similarity));
}

namespace {

using Docs = std::vector<std::vector<std::string>>;

struct State {
  std::size_t step = 0;  // paragraphs consumed
  std::vector<double> prev;  // similarity at the last rebuild
  std::vector<GainLedger> ledgers;
  CoocIndex index;
};

std::string fingerprint(const corpusio::Corpus& c, std::size_t end) {
  util::Fnv1a h;
  for (std::size_t i = 0; i < end; ++i) {
    for (const auto& t : c.paragraphs[i].tokens) {
      h.update(t);
      h.update(std::string_view("\x1f", 1));
    }
    h.update(std::string_view("\x1e", 1));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return buf;
}

json run_key(const corpusio::Corpus& c, const std::vector<WordPair>& pairs, const TraceOptions& o) {
  json p = json::array();
  for (const auto& wp : pairs) p.push_back({wp.x, wp.y});
  return {{"corpus", fingerprint(c, o.end)},
          {"pairs", p},
          {"start", o.start},
          {"end", o.end},
          {"k", o.k},
          {"seed", o.seed},
          {"scaling", std::string(vecspace::to_string(o.scaling))},
          {"method", std::string(vecspace::to_string(o.method))},
          {"stride", o.stride}};
}

void save_checkpoint(const std::filesystem::path& path, const json& key, const State& st) {
  json links = json::object();
  for (const auto& [term, partners] : st.index.links()) links[term] = partners;
  json ledgers = json::array();
  for (const auto& l : st.ledgers) ledgers.push_back(detail::to_json(l));
  const json j{{"format", "lsakit-trace-checkpoint"},
               {"version", kCheckpointVersion},
               {"run", key},
               {"step", st.step},
               {"prev", st.prev},
               {"ledgers", ledgers},
               {"index", links}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write checkpoint: " + tmp.string());
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::optional<State> load_checkpoint(const std::filesystem::path& path, const json& key) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j;
  try {
    j = json::parse(util::read_file(path));
  } catch (const json::exception& e) {
    throw InputError("unreadable checkpoint " + path.string() + ": " + e.what());
  }
  if (j.value("format", "") != "lsakit-trace-checkpoint")
    throw InputError("not a trace checkpoint: " + path.string());
  if (j.value("version", 0) != kCheckpointVersion)
    throw InputError("checkpoint version " + std::to_string(j.value("version", 0)) + " is not supported: " +
                     path.string());
  if (j.at("run") != key) throw InputError("checkpoint belongs to a different run: " + path.string());
  State st;
  try {
    st.step = j.at("step").get<std::size_t>();
    st.prev = j.at("prev").get<std::vector<double>>();
    for (const auto& l : j.at("ledgers")) st.ledgers.push_back(detail::ledger_from_json(l));
    for (const auto& [term, partners] : j.at("index").items())
      for (const auto& p : partners) st.index.add({term, p.get<std::string>()});
  } catch (const json::exception& e) {
    throw InputError("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  return st;
}

double pair_similarity(const vecspace::SemanticSpace& s, const WordPair& p, std::size_t& degenerate) {
  const auto ix = s.index_of(p.x);
  const auto iy = s.index_of(p.y);
  if (!ix || !iy || s.row_norm(*ix) == 0.0 || s.row_norm(*iy) == 0.0) {
    ++degenerate;
    return 0.0;
  }
  return vecspace::cosine(s.vectors().row(static_cast<Eigen::Index>(*ix)).transpose(),
                          s.vectors().row(static_cast<Eigen::Index>(*iy)).transpose());
}

vecspace::SemanticSpace build_prefix(const Docs& docs, const TraceOptions& o) {
  vecspace::BuildConfig cfg;
  cfg.k = o.k;
  cfg.min_count = 1;
  cfg.seed = o.seed;
  cfg.scaling = o.scaling;
  cfg.method = o.method;
  return vecspace::build_space(vecspace::build_matrix(docs, {}, {.min_count = 1}), cfg);
}

}  // namespace

std::vector<GainLedger> run_trace(const corpusio::Corpus& c, const std::vector<WordPair>& pairs,
                                  const TraceOptions& o) {
  const std::size_t n = c.paragraphs.size();
  if (o.start < 2) throw InputError("trace window: start must be at least 2");
  if (o.end > n) throw InputError("trace window: end " + std::to_string(o.end) + " exceeds corpus length " + std::to_string(n));
  if (o.end <= o.start) throw InputError("trace window: end must exceed start");
  if (o.stride < 1) throw InputError("trace stride must be at least 1");
  if (pairs.empty()) throw InputError("no pairs to trace");
  if (o.k < 1 || o.k > o.start) throw InputError("trace k must lie in 1..start");

  std::set<std::string_view> window;
  for (std::size_t i = 0; i < o.start; ++i)
    for (const auto& t : c.paragraphs[i].tokens) window.insert(t);
  for (const auto& p : pairs) {
    if (p.x == p.y) throw InputError("pair of identical words '" + p.x + "'");
    for (const auto* w : {&p.x, &p.y})
      if (!window.count(*w))
        throw InputError("'" + *w + "' does not occur in the first " + std::to_string(o.start) + " paragraphs");
  }

  Docs docs;
  docs.reserve(o.end);
  const json key = run_key(c, pairs, o);
  State st;
  if (auto resumed = o.checkpoint ? load_checkpoint(*o.checkpoint, key) : std::nullopt) {
    st = std::move(*resumed);
    if (st.step < o.start || st.step > o.end || st.ledgers.size() != pairs.size() || st.prev.size() != pairs.size())
      throw InputError("checkpoint state is inconsistent: " + o.checkpoint->string());
  } else {
    for (std::size_t i = 0; i < o.start; ++i) {
      st.index.add(c.paragraphs[i].tokens);
      docs.push_back(c.paragraphs[i].tokens);
    }
    const auto space = build_prefix(docs, o);
    for (const auto& p : pairs) {
      GainLedger l;
      l.pair = p;
      l.initial_similarity = l.final_similarity = pair_similarity(space, p, l.degenerate_steps);
      l.trajectory.push_back({o.start, l.initial_similarity, std::nullopt});
      st.prev.push_back(l.initial_similarity);
      st.ledgers.push_back(std::move(l));
    }
    st.step = o.start;
  }
  if (docs.empty())
    for (std::size_t i = 0; i < st.step; ++i) docs.push_back(c.paragraphs[i].tokens);

  std::vector<Category> last(pairs.size());
  std::size_t since_rebuild = 0;
  std::size_t since_checkpoint = 0;
  std::size_t done = 0;
  for (std::size_t t = st.step + 1; t <= o.end; ++t) {
    const auto& para = c.paragraphs[t - 1].tokens;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      last[i] = classify(pairs[i], para, st.index);
      ++st.ledgers[i].events[static_cast<std::size_t>(last[i])];
    }
    st.index.add(para);
    docs.push_back(para);
    ++since_rebuild;
    st.step = t;

    if ((t - o.start) % o.stride != 0 && t != o.end) continue;
    const auto space = build_prefix(docs, o);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto& l = st.ledgers[i];
      const double sim = pair_similarity(space, pairs[i], l.degenerate_steps);
      const Category bucket = since_rebuild == 1 ? last[i] : Category::mixed;
      l.gains[static_cast<std::size_t>(bucket)] += sim - st.prev[i];
      l.trajectory.push_back({t, sim, bucket});
      l.final_similarity = sim;
      st.prev[i] = sim;
    }
    since_checkpoint += since_rebuild;
    done += since_rebuild;
    since_rebuild = 0;
    const bool stopping = o.max_steps > 0 && done >= o.max_steps && t != o.end;
    if (o.checkpoint && (stopping || (o.checkpoint_every > 0 && (since_checkpoint >= o.checkpoint_every || t == o.end)))) {
      save_checkpoint(*o.checkpoint, key, st);
      since_checkpoint = 0;
    }
    if (stopping) break;
  }
  return st.ledgers;
}

}  // namespace lsakit::cooctrace
