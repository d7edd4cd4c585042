#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <set>

#include "cli/commands.hpp"
#include "lsakit/cli.hpp"
#include "util/text.hpp"

#ifndef LSAKIT_VERSION
#define LSAKIT_VERSION "0.0.0"
#endif

namespace lsakit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void add_common(CLI::App* c, Common& o) {
  c->add_option("--config", o.config, "File of 'key = value' lines; command-line flags win");
  c->add_option("--seed", o.seed, "Random seed");
  c->add_option("--out", o.out, "Output directory");
  c->add_option("--format", o.format, "Report format on stdout")->check(CLI::IsMember({"json", "text"}));
}

void add_tokenizer(CLI::App* c, TokenOpts& t, bool lemmas) {
  c->add_option("--apostrophes", t.apostrophes, "keep or split intra-word apostrophes")
      ->check(CLI::IsMember({"keep", "split"}));
  c->add_option("--hyphens", t.hyphens, "keep or split intra-word hyphens")->check(CLI::IsMember({"keep", "split"}));
  if (!lemmas) return;
  c->add_option("--lemmas", t.lemmas, "Lemma map (token<TAB>lemma[<TAB>pos])");
  c->add_option("--lemma-mode", t.lemma_mode, "none, verbs_only or all")
      ->check(CLI::IsMember({"none", "verbs_only", "all"}));
}

void add_corpus_input(CLI::App* c, CorpusInput& in) {
  c->add_option("--manifest", in.manifest, "Source manifest (path<TAB>category<TAB>level)");
  c->add_option("--corpus", in.corpus, "Corpus file written by 'stratify'");
  add_tokenizer(c, in.tok, true);
}

// Config values fill only the options the command line left unset. Keys
// are long option names, '_' and '-' interchangeable.
void apply_config(const std::vector<CLI::App*>& apps, const fs::path& path) {
  std::size_t line_no = 0;
  for (const auto& raw : util::read_lines(path)) {
    ++line_no;
    if (util::is_skippable(raw)) continue;
    const auto at = util::where(path, line_no);
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw InputError(at + ": expected 'key = value'");
    std::string key(util::trim(std::string_view(raw).substr(0, eq)));
    std::string value(util::trim(std::string_view(raw).substr(eq + 1)));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config") throw InputError(at + ": bad key '" + key + "'");
    CLI::Option* opt = nullptr;
    for (auto* app : apps)
      if ((opt = app->get_option_no_throw("--" + key))) break;
    if (!opt) throw InputError(at + ": unknown key '" + key + "' for '" + apps.back()->get_name() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

json typed(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (const auto i = util::parse_int(s)) return *i;
  if (const auto d = util::parse_double(s)) return *d;
  return s;
}

void record_parameters(const CLI::App* app, RunManifest& m) {
  for (const CLI::Option* o : app->get_options()) {
    auto name = o->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    std::replace(name.begin(), name.end(), '-', '_');
    std::vector<std::string> values = o->count() > 0 ? o->results() : std::vector<std::string>{};
    if (values.empty() && !o->get_default_str().empty()) values.push_back(o->get_default_str());
    if (values.empty())
      m.parameter(name, nullptr);
    else if (values.size() == 1)
      m.parameter(name, typed(values[0]));
    else {
      json arr = json::array();
      for (const auto& v : values) arr.push_back(typed(v));
      m.parameter(name, arr);
    }
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latent semantic analysis toolkit: build spaces, query, evaluate, trace, comprehend.", "lsakit"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", LSAKIT_VERSION);
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a semantic space from a corpus");
  add_common(b, build.common);
  add_corpus_input(b, build.input);
  b->add_option("--k", build.k, "Dimensions kept");
  b->add_option("--min-count", build.min_count, "Drop terms with fewer occurrences");
  b->add_option("--scaling", build.scaling, "sigma (U*S) or none (U)")->check(CLI::IsMember({"sigma", "none"}));
  b->add_option("--method", build.method, "SVD method")->check(CLI::IsMember({"auto", "dense", "randomized"}));
  b->add_option("--stop-words", build.stop_words, "Words to leave out, one per line");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Cosines, neighbors and fold-in vectors");
  q->require_subcommand(1);
  add_common(q, query.common);
  q->add_option("--space", query.space, "Space file");
  auto* qc = q->add_subcommand("cosine", "Cosine between two words");
  qc->add_option("a", query.a)->required();
  qc->add_option("b", query.b)->required();
  auto* qn = q->add_subcommand("neighbors", "Nearest terms to a word");
  qn->add_option("word", query.word)->required();
  qn->add_option("n", query.n)->required();
  qn->add_option("--min-weight", query.min_weight, "Lower bound on neighbor global weight");
  qn->add_option("--max-weight", query.max_weight, "Upper bound on neighbor global weight");
  auto* qf = q->add_subcommand("foldin", "Vector of a text file");
  qf->add_option("file", query.file)->required();
  add_tokenizer(qf, query.tok, true);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Run an evaluation protocol against a space");
  add_common(e, eval.common);
  e->add_option("--space", eval.space, "Space file");
  e->add_option("--protocol", eval.protocol, "assoc, judgment, vocab or recall")
      ->check(CLI::IsMember({"assoc", "judgment", "vocab", "recall"}));
  e->add_option("--data", eval.data, "Dataset file");
  e->add_option("--weight-quantile", eval.weight_quantile, "assoc: keep the lowest-weight share of stimuli");
  e->add_option("--entropy-quantile", eval.entropy_quantile, "assoc: keep the lowest-entropy share of stimuli");
  e->add_option("--weight-cap", eval.weight_cap, "vocab: score only words with global weight below this");
  add_tokenizer(e, eval.tok, false);

  StratifyArgs strat;
  auto* s = app.add_subcommand("stratify", "Score readability and order the corpus by level");
  add_common(s, strat.common);
  add_corpus_input(s, strat.input);
  s->add_option("--wordlist", strat.wordlist, "Common-word list");

  TraceArgs trace;
  auto* t = app.add_subcommand("trace", "Attribute similarity gains for word pairs");
  add_common(t, trace.common);
  add_corpus_input(t, trace.input);
  t->add_option("--pairs", trace.pairs, "Pairs file (x<TAB>y)");
  t->add_option("--start", trace.start, "Paragraphs in the first space");
  t->add_option("--end", trace.end, "Last paragraph (0 = all)");
  t->add_option("--k", trace.k, "Dimensions kept");
  t->add_option("--stride", trace.stride, "Paragraphs per rebuild (1 = exact)");
  t->add_option("--scaling", trace.scaling, "sigma or none")->check(CLI::IsMember({"sigma", "none"}));
  t->add_option("--method", trace.method, "SVD method")->check(CLI::IsMember({"auto", "dense", "randomized"}));
  t->add_option("--checkpoint", trace.checkpoint, "Checkpoint file to resume from and update");
  t->add_option("--checkpoint-every", trace.checkpoint_every, "Steps between checkpoints (0 = never)");
  t->add_option("--max-steps", trace.max_steps, "Stop after this many steps (0 = no limit)");

  ComprehendArgs comp;
  auto& cp = comp.params;
  auto* c = app.add_subcommand("comprehend", "Run construction-integration over a proposition file");
  add_common(c, comp.common);
  c->add_option("--space", comp.space, "Space file");
  c->add_option("--propositions", comp.propositions, "Proposition file");
  c->add_option("--n-associates", cp.n_associates, "Associates per slot");
  c->add_option("--predication-threshold", cp.predication_threshold, "Minimum cosine to an argument");
  c->add_option("--predication-pool", cp.predication_pool, "Predicate neighbors screened");
  c->add_option("--min-weight", cp.min_weight, "Lower end of the global weight band");
  c->add_option("--max-weight", cp.max_weight, "Upper end of the global weight band");
  c->add_option("--wm", comp.wm, "fixed_count(n), activation_budget(t[,proportional]) or threshold(x)");
  c->add_option("--decay-rate", cp.decay_rate, "Episodic decay per cycle");
  c->add_option("--reinforcement-gain", cp.reinforcement_gain, "Episodic reinforcement gain");
  c->add_option("--recall-threshold", cp.recall_threshold, "Minimum cosine for episodic recall");
  c->add_option("--recall-floor", cp.recall_floor, "Minimum decayed activation for episodic recall");
  c->add_option("--epsilon", cp.epsilon, "Integration tolerance");
  c->add_option("--max-iterations", cp.max_iterations, "Integration iteration cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));

    CLI::App* cmd = app.get_subcommands().front();
    std::vector<CLI::App*> chain{cmd};
    if (cmd == q) chain.push_back(q->get_subcommands().front());
    // --config belongs to the command; query sub-commands share it
    const auto* cfg = cmd->get_option("--config");
    if (cfg->count() > 0) {
      std::vector<CLI::App*> search(chain.rbegin(), chain.rend());
      apply_config(search, cfg->as<std::string>());
    }

    RunManifest m(cmd == q ? "query " + chain.back()->get_name() : cmd->get_name());
    for (auto* a : chain) record_parameters(a, m);
    if (cfg->count() > 0) m.input(cfg->as<std::string>());

    if (cmd == b) return cmd_build(build, m, out, err);
    if (cmd == e) return cmd_eval(eval, m, out, err);
    if (cmd == s) return cmd_stratify(strat, m, out, err);
    if (cmd == t) return cmd_trace(trace, m, out, err);
    if (cmd == c) return cmd_comprehend(comp, m, out, err);
    const auto kind = chain.back() == qc ? QueryKind::cosine : chain.back() == qn ? QueryKind::neighbors : QueryKind::foldin;
    return cmd_query(query, kind, m, q->get_option("--out")->count() > 0, out, err);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex, out, err);
    return rc == 0 ? kExitOk : kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ConvergenceError& ex) {
    err << "lsakit: error: " << ex.what() << "\n";
    return kExitConvergence;
  } catch (const DataError& ex) {
    err << "lsakit: error: " << ex.what() << "\n";
    return kExitData;
  } catch (const InputError& ex) {
    err << "lsakit: error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& ex) {
    err << "lsakit: error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const std::exception& ex) {
    err << "lsakit: internal error: " << ex.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lsakit::cli
