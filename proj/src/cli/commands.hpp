#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cli/run_manifest.hpp"
#include "lsakit/cimodel.hpp"

namespace lsakit::cli {

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string format = "text";
};

struct TokenOpts {
  std::string apostrophes = "split";
  std::string hyphens = "keep";
  std::string lemmas;
  std::string lemma_mode = "none";
};

// Exactly one of manifest / corpus.
struct CorpusInput {
  std::string manifest;
  std::string corpus;
  TokenOpts tok;
};

struct BuildArgs {
  Common common;
  CorpusInput input;
  std::size_t k = 300;
  std::size_t min_count = 2;
  std::string scaling = "sigma";
  std::string method = "auto";
  std::string stop_words;
};

enum class QueryKind { cosine, neighbors, foldin };

struct QueryArgs {
  Common common;
  std::string space;
  std::string a, b;  // cosine
  std::string word;  // neighbors
  std::size_t n = 10;
  double min_weight = 0.0;
  double max_weight = 1.0;
  std::string file;  // foldin
  TokenOpts tok;
};

struct EvalArgs {
  Common common;
  std::string space;
  std::string protocol;
  std::string data;
  std::optional<double> weight_quantile;
  std::optional<double> entropy_quantile;
  std::optional<double> weight_cap;
  TokenOpts tok;
};

struct StratifyArgs {
  Common common;
  CorpusInput input;
  std::string wordlist;
};

struct TraceArgs {
  Common common;
  CorpusInput input;
  std::string pairs;
  std::size_t start = 2;
  std::size_t end = 0;
  std::size_t k = 300;
  std::size_t stride = 1;
  std::string scaling = "sigma";
  std::string method = "auto";
  std::string checkpoint;
  std::size_t checkpoint_every = 0;
  std::size_t max_steps = 0;
};

struct ComprehendArgs {
  Common common;
  std::string space;
  std::string propositions;
  cimodel::CIParams params;
  std::string wm = "fixed_count(7)";
};

// Each returns the process exit code. Library errors propagate as
// exceptions and are mapped by run().
int cmd_build(const BuildArgs& a, RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_query(const QueryArgs& a, QueryKind kind, RunManifest& m, bool write_manifest, std::ostream& out,
              std::ostream& err);
int cmd_eval(const EvalArgs& a, RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_stratify(const StratifyArgs& a, RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_trace(const TraceArgs& a, RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_comprehend(const ComprehendArgs& a, RunManifest& m, std::ostream& out, std::ostream& err);

}  // namespace lsakit::cli
