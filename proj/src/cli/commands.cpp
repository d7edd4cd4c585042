#include "cli/commands.hpp"

#include <json.hpp>
#include <ostream>
#include <unordered_set>

#include "lsakit/cooctrace.hpp"
#include "lsakit/corpusio.hpp"
#include "lsakit/evalsuite.hpp"
#include "lsakit/vecspace.hpp"
#include "util/table.hpp"
#include "util/text.hpp"

namespace lsakit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path prepare_out(const Common& c) {
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory: " + dir.string());
  return dir;
}

void emit(std::ostream& out, const Common& c, const std::string& json_text, const std::string& text) {
  out << (c.format == "json" ? json_text : text);
}

corpusio::MarkPolicy mark(const std::string& s) {
  return s == "keep" ? corpusio::MarkPolicy::keep : corpusio::MarkPolicy::split;
}

corpusio::TokenizePolicy policy_of(const TokenOpts& t) { return {mark(t.apostrophes), mark(t.hyphens)}; }

struct Lemmas {
  corpusio::LemmaMap map;
  corpusio::LemmaMode mode = corpusio::LemmaMode::none;
  bool active() const { return mode != corpusio::LemmaMode::none; }
};

Lemmas load_lemmas(const TokenOpts& t, RunManifest& m) {
  Lemmas l;
  const auto mode = corpusio::parse_lemma_mode(t.lemma_mode);
  if (!mode) throw InputError("unknown lemma mode '" + t.lemma_mode + "'");
  l.mode = *mode;
  if (t.lemmas.empty() && l.active()) throw InputError("--lemma-mode " + t.lemma_mode + " needs --lemmas");
  if (!t.lemmas.empty() && !l.active()) throw InputError("--lemmas given but --lemma-mode is none");
  if (!t.lemmas.empty()) {
    l.map = corpusio::LemmaMap::load(t.lemmas);
    m.input(t.lemmas);
  }
  return l;
}

std::vector<std::string> tokens_of(const std::string& text, const TokenOpts& t, const Lemmas& l) {
  auto tokens = corpusio::tokenize(text, policy_of(t)).tokens;
  return l.active() ? corpusio::lemmatize(tokens, l.map, l.mode) : tokens;
}

corpusio::Corpus load_corpus_input(const CorpusInput& in, RunManifest& m) {
  if (in.manifest.empty() == in.corpus.empty()) throw InputError("give exactly one of --manifest or --corpus");
  if (!in.corpus.empty()) {
    auto c = corpusio::load_corpus(in.corpus);
    m.input(in.corpus);
    return c;
  }
  const auto sources = corpusio::read_manifest(in.manifest);
  m.input(in.manifest);
  for (const auto& s : sources) m.input(s.path);
  const auto lemmas = load_lemmas(in.tok, m);
  corpusio::IngestOptions opt;
  opt.policy = policy_of(in.tok);
  if (lemmas.active()) {
    opt.lemmas = &lemmas.map;
    opt.lemma_mode = lemmas.mode;
  }
  return corpusio::ingest(sources, opt);
}

vecspace::SemanticSpace load_space(const std::string& path, RunManifest& m) {
  if (path.empty()) throw InputError("--space is required");
  auto s = vecspace::read_space_file(path);
  m.input(path);
  return s;
}

vecspace::Scaling scaling_of(const std::string& s) {
  const auto v = vecspace::parse_scaling(s);
  if (!v) throw InputError("unknown scaling '" + s + "'");
  return *v;
}

vecspace::SvdMethod method_of(const std::string& s) {
  const auto v = vecspace::parse_svd_method(s);
  if (!v) throw InputError("unknown SVD method '" + s + "'");
  return *v;
}

std::string fixed6(double v) { return util::fixed(v, 6); }

std::string cat_name(corpusio::SourceCategory c) { return std::string(corpusio::to_string(c)); }

json stats_json(const corpusio::CorpusStats& st) {
  json words = json::object();
  for (const auto& [c, n] : st.words_by_category) words[cat_name(c)] = n;
  json paras = json::object();
  for (const auto& [l, n] : st.paragraphs_by_level) paras[std::to_string(l)] = n;
  json means = json::object();
  for (const auto& [l, v] : st.mean_readability_by_level) means[std::to_string(l)] = v;
  json by_cat = json::object();
  for (const auto& [c, levels] : st.mean_readability_by_category_level) {
    json row = json::object();
    for (const auto& [l, v] : levels) row[std::to_string(l)] = v;
    by_cat[cat_name(c)] = row;
  }
  return {{"tokens", st.token_count},
          {"paragraphs", st.paragraph_count},
          {"words_by_category", words},
          {"paragraphs_by_level", paras},
          {"mean_readability_by_level", means},
          {"mean_readability_by_category_level", by_cat},
          {"readability_monotone", st.readability_monotone},
          {"readability_monotone_per_category", st.readability_monotone_per_category}};
}

std::string stats_text(const corpusio::CorpusStats& st) {
  std::string out = "paragraphs: " + std::to_string(st.paragraph_count) + "\ntokens: " +
                    std::to_string(st.token_count) + "\n\n";
  util::Table cats({"category", "words"});
  for (const auto& [c, n] : st.words_by_category) cats.add({cat_name(c), std::to_string(n)});
  out += cats.render() + "\n";
  util::Table levels({"level", "paragraphs", "mean readability"});
  for (const auto& [l, n] : st.paragraphs_by_level) {
    const auto it = st.mean_readability_by_level.find(l);
    levels.add({std::to_string(l), std::to_string(n),
                it == st.mean_readability_by_level.end() ? std::string("-") : util::fixed(it->second, 2)});
  }
  out += levels.render();
  return out;
}

std::unordered_set<std::string> load_stop_words(const std::string& path) {
  std::unordered_set<std::string> out;
  for (const auto& line : util::read_lines(path))
    if (!util::is_skippable(line)) out.insert(corpusio::normalize(util::trim(line)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_build(const BuildArgs& a, RunManifest& m, std::ostream& out, std::ostream&) {
  const auto corpus = load_corpus_input(a.input, m);
  vecspace::BuildConfig cfg;
  cfg.k = a.k;
  cfg.min_count = a.min_count;
  cfg.seed = a.common.seed;
  cfg.scaling = scaling_of(a.scaling);
  cfg.method = method_of(a.method);
  std::unordered_set<std::string> stop;
  if (!a.stop_words.empty()) {
    stop = load_stop_words(a.stop_words);
    m.input(a.stop_words);
  }
  const auto space = vecspace::build_space(corpus, cfg, a.stop_words.empty() ? nullptr : &stop);
  const auto stats = corpusio::corpus_stats(corpus);

  const auto dir = prepare_out(a.common);
  vecspace::write_space_file(dir / "space.lsa", space);
  m.output(dir, "space.lsa");

  const auto& sv = space.singular_values();
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  const double energy = sv.squaredNorm();
  json spectrum{{"k", space.k()},
                {"singular_values", values},
                {"largest", values.empty() ? 0.0 : values.front()},
                {"smallest", values.empty() ? 0.0 : values.back()},
                {"sum_of_squares", energy}};
  json space_j{{"terms", space.size()},
               {"paragraphs", space.n_docs()},
               {"k", space.k()},
               {"min_count", cfg.min_count},
               {"seed", cfg.seed},
               {"scaling", std::string(vecspace::to_string(cfg.scaling))},
               {"weighting", std::string(vecspace::to_string(cfg.weighting))},
               {"method", std::string(vecspace::to_string(cfg.method))},
               {"stop_words", stop.size()}};
  const auto report_json = json{{"corpus", stats_json(stats)}, {"space", space_j}, {"spectrum", spectrum}}.dump(2) + "\n";

  std::string text = "corpus\n" + stats_text(stats) + "\nspace\n";
  text += "terms: " + std::to_string(space.size()) + "\nparagraphs: " + std::to_string(space.n_docs()) +
          "\nk: " + std::to_string(space.k()) + "\nscaling: " + std::string(vecspace::to_string(cfg.scaling)) +
          "\nmethod: " + std::string(vecspace::to_string(cfg.method)) + "\nseed: " + std::to_string(cfg.seed) +
          "\n\nspectrum\n";
  util::Table t({"rank", "singular value", "cumulative share"});
  double cum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cum += values[i] * values[i];
    // long spectra: first ten and the last one
    if (i < 10 || i + 1 == values.size())
      t.add({std::to_string(i + 1), util::fixed(values[i], 4), util::fixed(energy > 0 ? cum / energy : 0.0, 4)});
    else if (i == 10)
      t.add({"...", "", ""});
  }
  text += t.render();

  write_output(dir, "build_report.json", report_json, m);
  write_output(dir, "build_report.txt", text, m);
  m.write(dir);
  emit(out, a.common, report_json, text);
  return 0;
}

int cmd_query(const QueryArgs& a, QueryKind kind, RunManifest& m, bool write_manifest, std::ostream& out,
              std::ostream&) {
  const auto space = load_space(a.space, m);
  const bool as_json = a.common.format == "json";
  std::string result;
  switch (kind) {
    case QueryKind::cosine: {
      const auto va = vecspace::term_vector(space, corpusio::normalize(a.a));
      const auto vb = vecspace::term_vector(space, corpusio::normalize(a.b));
      const double c = vecspace::cosine(va, vb);
      result = as_json ? json{{"a", a.a}, {"b", a.b}, {"cosine", c}}.dump(2) + "\n" : fixed6(c) + "\n";
      break;
    }
    case QueryKind::neighbors: {
      const auto word = corpusio::normalize(a.word);
      if (!space.contains(word)) throw UnknownWordError(word);
      const auto list = vecspace::neighbors(space, word, a.n, {a.min_weight, a.max_weight});
      if (as_json) {
        json arr = json::array();
        for (const auto& nb : list) arr.push_back({{"term", nb.term}, {"cosine", nb.cosine}});
        result = json{{"word", word}, {"neighbors", arr}}.dump(2) + "\n";
      } else {
        for (const auto& nb : list) result += nb.term + "\t" + fixed6(nb.cosine) + "\n";
      }
      break;
    }
    case QueryKind::foldin: {
      m.input(a.file);
      const auto lemmas = load_lemmas(a.tok, m);
      const auto p = vecspace::fold_in(space, tokens_of(util::read_file(a.file), a.tok, lemmas));
      if (as_json) {
        std::vector<double> v(p.vector.data(), p.vector.data() + p.vector.size());
        result = json{{"in_vocab", p.in_vocab}, {"tokens", p.total}, {"vector", v}}.dump(2) + "\n";
      } else {
        result = "# " + std::to_string(p.in_vocab) + " of " + std::to_string(p.total) + " tokens in the vocabulary\n";
        for (Eigen::Index i = 0; i < p.vector.size(); ++i) result += std::to_string(i + 1) + "\t" + fixed6(p.vector(i)) + "\n";
      }
      break;
    }
  }
  if (write_manifest) {
    const auto dir = prepare_out(a.common);
    write_output(dir, "query.txt", result, m);
    m.write(dir);
  }
  out << result;
  return 0;
}

int cmd_eval(const EvalArgs& a, RunManifest& m, std::ostream& out, std::ostream&) {
  const auto space = load_space(a.space, m);
  if (a.data.empty()) throw InputError("--data is required");
  const auto policy = policy_of(a.tok);
  std::string report_json, report_text;
  if (a.protocol == "assoc") {
    const auto norms = evalsuite::load_norms(a.data);
    m.input(a.data);
    const auto r = evalsuite::assoc_test(space, norms, {a.weight_quantile, a.entropy_quantile});
    report_json = r.to_json();
    report_text = r.to_text();
  } else if (a.protocol == "judgment") {
    const auto items = evalsuite::load_judgments(a.data);
    m.input(a.data);
    const auto r = evalsuite::judgment_test(space, items);
    report_json = r.to_json();
    report_text = r.to_text();
  } else if (a.protocol == "vocab") {
    const auto items = evalsuite::load_vocab(a.data, policy);
    m.input(a.data);
    const auto r = evalsuite::vocab_test(space, items, a.weight_cap);
    report_json = r.to_json();
    report_text = r.to_text();
  } else if (a.protocol == "recall") {
    const auto records = evalsuite::load_recall(a.data, policy);
    m.input(a.data);
    // the source and protocol files the TSV points at
    const auto base = fs::path(a.data).parent_path();
    for (const auto& line : util::read_lines(a.data)) {
      if (util::is_skippable(line)) continue;
      const auto cols = util::split(line, '\t');
      for (std::size_t i = 3; i < 5 && i < cols.size(); ++i) {
        const fs::path p(std::string(util::trim(cols[i])));
        m.input(p.is_absolute() ? p : base / p);
      }
    }
    const auto r = evalsuite::recall_correlation(space, records);
    report_json = r.to_json();
    report_text = r.to_text();
  } else {
    throw InputError(a.protocol.empty() ? "--protocol is required" : "unknown protocol '" + a.protocol + "'");
  }
  const auto dir = prepare_out(a.common);
  write_output(dir, "eval_" + a.protocol + ".json", report_json, m);
  write_output(dir, "eval_" + a.protocol + ".txt", report_text, m);
  m.write(dir);
  emit(out, a.common, report_json, report_text);
  return 0;
}

int cmd_stratify(const StratifyArgs& a, RunManifest& m, std::ostream& out, std::ostream&) {
  auto corpus = load_corpus_input(a.input, m);
  if (a.wordlist.empty()) throw InputError("--wordlist is required");
  const auto list = corpusio::CommonWordList::load(a.wordlist);
  m.input(a.wordlist);
  corpus = corpusio::stratify(std::move(corpus), list);
  const auto stats = corpusio::corpus_stats(corpus);

  const auto dir = prepare_out(a.common);
  corpusio::save_corpus(dir / "corpus.tsv", corpus);
  m.output(dir, "corpus.tsv");

  const auto report_json = json{{"corpus", stats_json(stats)}, {"common_words", list.size()}}.dump(2) + "\n";
  std::string text = stats_text(stats) + "\n";
  std::vector<std::string> header{"category"};
  for (int l = corpusio::AgeLevel::kMin; l <= corpusio::AgeLevel::kMax; ++l) header.push_back("level " + std::to_string(l));
  util::Table t(header);
  for (const auto& [c, levels] : stats.mean_readability_by_category_level) {
    std::vector<std::string> row{cat_name(c)};
    for (int l = corpusio::AgeLevel::kMin; l <= corpusio::AgeLevel::kMax; ++l) {
      const auto it = levels.find(l);
      row.push_back(it == levels.end() ? "-" : util::fixed(it->second, 2));
    }
    t.add(row);
  }
  text += t.render() + "\nreadability increases with level: " + (stats.readability_monotone ? "yes" : "no") +
          "\nwithin every category: " + (stats.readability_monotone_per_category ? "yes" : "no") + "\n";

  write_output(dir, "stratify_report.json", report_json, m);
  write_output(dir, "stratify_report.txt", text, m);
  m.write(dir);
  emit(out, a.common, report_json, text);
  return 0;
}

int cmd_trace(const TraceArgs& a, RunManifest& m, std::ostream& out, std::ostream& err) {
  const auto corpus = load_corpus_input(a.input, m);
  if (a.pairs.empty()) throw InputError("--pairs is required");
  const auto pairs = cooctrace::load_pairs(a.pairs);
  m.input(a.pairs);

  cooctrace::TraceOptions opt;
  opt.start = a.start;
  opt.end = a.end == 0 ? corpus.paragraphs.size() : a.end;
  opt.k = a.k;
  opt.seed = a.common.seed;
  opt.scaling = scaling_of(a.scaling);
  opt.method = method_of(a.method);
  opt.stride = a.stride;
  if (!a.checkpoint.empty()) {
    opt.checkpoint = a.checkpoint;
    if (fs::exists(a.checkpoint)) m.input(a.checkpoint);
  }
  opt.checkpoint_every = a.checkpoint_every;
  opt.max_steps = a.max_steps;

  const auto report = cooctrace::trace_report(cooctrace::run_trace(corpus, pairs, opt));
  const auto dir = prepare_out(a.common);
  const auto report_json = report.to_json();
  const auto report_text = report.to_text();
  write_output(dir, "trace_ledger.json", report_json, m);
  write_output(dir, "trace_report.txt", report_text, m);
  write_output(dir, "trajectory.tsv", report.trajectory_tsv(), m);
  m.write(dir);
  emit(out, a.common, report_json, report_text);
  if (!report.telescoping_ok) {
    err << "lsakit: telescoping check failed (max error " << report.max_telescoping_error << ")\n";
    return 4;
  }
  return 0;
}

int cmd_comprehend(const ComprehendArgs& a, RunManifest& m, std::ostream& out, std::ostream& err) {
  const auto space = load_space(a.space, m);
  if (a.propositions.empty()) throw InputError("--propositions is required");
  const auto props = cimodel::load_propositions(a.propositions);
  m.input(a.propositions);
  auto params = a.params;
  params.wm = cimodel::WmStrategy::parse(a.wm);

  const auto trace = cimodel::comprehend(props, space, params);
  const auto dir = prepare_out(a.common);
  const auto trace_json = trace.to_json();
  const auto log = trace.to_text();
  write_output(dir, "comprehension.json", trace_json, m);
  write_output(dir, "comprehension.txt", log, m);
  m.write(dir);
  emit(out, a.common, trace_json, log);

  for (const auto& c : trace.cycles)
    if (!c.skipped && !c.activation.converged) {
      err << "lsakit: integration did not converge in cycle " << c.cycle << "\n";
      return 4;
    }
  return 0;
}

}  // namespace lsakit::cli
