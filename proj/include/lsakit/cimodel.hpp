#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsakit/errors.hpp"
#include "lsakit/vecspace.hpp"

namespace lsakit::cimodel {

using vecspace::SemanticSpace;
using vecspace::Vector;

// ---------------------------------------------------------------------------
// Propositions

struct Proposition {
  std::string predicate;
  std::vector<std::string> args;
  std::size_t source_index = 0;

  // "pred(a,b)" or "pred" for a bare predicate; parses back to itself.
  std::string text() const;
  // Node key: like text(), but a bare predicate gets "()" so that it never
  // collides with the term of the same spelling.
  std::string key() const;
  // predicate followed by the arguments
  std::vector<std::string> tokens() const;

  friend bool operator==(const Proposition&, const Proposition&) = default;
};

class PropositionSyntaxError : public InputError {
 public:
  PropositionSyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// One proposition per line: `pred(arg, arg, ...)` or a bare `pred`.
// Blank lines and '#' comments are skipped. Words are case-folded.
// Columns count code points from 1.
std::vector<Proposition> parse_propositions(std::string_view text);
std::vector<Proposition> load_propositions(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Parameters

enum class WmKind { fixed_count, activation_budget, threshold };
// How an activation budget is spent: keep the longest prefix of the
// descending order that fits, or keep every active node and scale the
// activations down to the budget.
enum class BudgetMode { greedy_prefix, proportional };

struct WmStrategy {
  WmKind kind = WmKind::fixed_count;
  std::size_t count = 7;
  double total = 3.0;
  double theta = 0.5;
  BudgetMode budget_mode = BudgetMode::greedy_prefix;

  static WmStrategy fixed_count(std::size_t n);
  static WmStrategy activation_budget(double total, BudgetMode mode = BudgetMode::greedy_prefix);
  static WmStrategy threshold(double theta);

  // "fixed_count(7)", "activation_budget(1.5)", "activation_budget(1.5,proportional)", "threshold(0.5)"
  std::string describe() const;
  static WmStrategy parse(std::string_view s);  // throws InputError
};

enum class Origin { text, associate, carried_over, episodic_recall };
std::string_view to_string(Origin o);

struct CIParams {
  std::size_t n_associates = 3;
  double predication_threshold = 0.2;
  // Number of predicate neighbours examined before the predication filter.
  std::size_t predication_pool = 20;
  double min_weight = 0.0;
  double max_weight = 1.0;
  WmStrategy wm = WmStrategy::fixed_count(7);
  double decay_rate = 0.8;
  double reinforcement_gain = 1.0;
  double recall_threshold = 0.3;
  // Entries whose decayed activation is not above this are never recalled.
  double recall_floor = 0.05;
  double epsilon = 1e-4;
  std::size_t max_iterations = 100;

  vecspace::WeightBand band() const { return {min_weight, max_weight}; }
  void validate() const;  // throws InputError
};

// ---------------------------------------------------------------------------
// Construction

struct SlotAssociates {
  std::string word;
  std::vector<vecspace::Neighbor> associates;
  std::string note;  // why the slot was skipped, empty otherwise
};

struct Associates {
  SlotAssociates predicate;
  std::vector<SlotAssociates> args;
};

// Arguments: top n_associates neighbours inside the weight band, excluding
// the proposition's own words. Predicate: the first n_associates of its
// top predication_pool neighbours (same band and exclusions) whose cosine
// with at least one argument reaches predication_threshold. A word outside
// the vocabulary or the band is skipped with a note.
Associates retrieve_associates(const SemanticSpace& s, const Proposition& p, const CIParams& params);

struct NetworkNode {
  std::string key;
  std::optional<Proposition> proposition;  // empty for a term
  Vector vector;
  Origin origin = Origin::text;
};

NetworkNode term_node(const SemanticSpace& s, std::string_view term, Origin origin);
// Vector = fold-in of predicate and arguments. Throws EmptyProjectionError.
NetworkNode proposition_node(const SemanticSpace& s, const Proposition& p, Origin origin);

struct Network {
  std::vector<NetworkNode> nodes;
  Eigen::MatrixXd weights;  // max(0, cosine), zero diagonal
  std::vector<std::string> notes;
};

// Nodes with zero vectors are dropped and noted. Throws InputError when no
// node is left.
Network build_network(std::vector<NetworkNode> nodes);

// ---------------------------------------------------------------------------
// Integration and working memory

struct ActivationState {
  Vector values;
  std::size_t iterations = 0;
  bool converged = false;
};

// Repeats a <- W a, rescale so that max(a) = 1, reset a[clamp] = 1, until
// max |delta| < epsilon. Throws InputError when W is not square, symmetric,
// nonnegative with a zero diagonal, or `initial` has the wrong size.
ActivationState integrate(const Eigen::MatrixXd& w, const Vector& initial, std::optional<std::size_t> clamp,
                          double epsilon, std::size_t max_iterations);

struct WmItem {
  NetworkNode node;
  double activation = 0.0;
};

struct WorkingMemory {
  std::vector<WmItem> items;  // descending activation, ties by key
  WmStrategy strategy;
  bool empty() const noexcept { return items.empty(); }
  bool contains(std::string_view key) const;
};

WorkingMemory select_wm(const std::vector<NetworkNode>& nodes, const Vector& activation,
                        const WmStrategy& strategy);

// ---------------------------------------------------------------------------
// Episodic buffer

struct EpisodicEntry {
  NetworkNode node;
  double activation = 0.0;  // as of last_cycle
  std::size_t last_cycle = 0;
  std::size_t occurrences = 0;
};

class EpisodicStore {
 public:
  const std::map<std::string, EpisodicEntry>& entries() const noexcept { return entries_; }
  const EpisodicEntry* find(std::string_view key) const;
  std::optional<std::size_t> last_cycle() const noexcept { return last_cycle_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Activation of an entry decayed forward to `cycle`.
  static double decayed(const EpisodicEntry& e, std::size_t cycle, double decay_rate);

 private:
  friend EpisodicStore episodic_update(EpisodicStore, const WorkingMemory&, std::size_t, const CIParams&);
  std::map<std::string, EpisodicEntry> entries_;
  std::optional<std::size_t> last_cycle_;
};

// Decays every entry to `cycle`, reinforces the ones in `wm` by
// reinforcement_gain * wm activation (capped at 1) and adds new ones at
// their wm activation. Throws InputError unless cycle is after the last one.
EpisodicStore episodic_update(EpisodicStore store, const WorkingMemory& wm, std::size_t cycle,
                              const CIParams& params);

struct Recalled {
  NetworkNode node;
  double cosine = 0.0;
  double activation = 0.0;  // decayed to the current cycle
};

// Entries with cosine(entry, fold_in(p)) >= recall_threshold and decayed
// activation > recall_floor, by descending cosine. Throws
// EmptyProjectionError when p does not project.
std::vector<Recalled> episodic_recall(const EpisodicStore& store, const Proposition& p, const SemanticSpace& s,
                                      const CIParams& params, std::size_t cycle);

// ---------------------------------------------------------------------------
// Comprehension

struct CycleRecord {
  std::size_t cycle = 0;  // 1-based
  Proposition input;
  bool skipped = false;
  std::vector<std::string> notes;
  std::vector<Recalled> recalled;
  Associates associates;
  Network network;
  ActivationState activation;
  WorkingMemory wm;
  EpisodicStore store;  // after the update
};

struct ComprehensionTrace {
  CIParams params;
  std::vector<CycleRecord> cycles;

  std::string to_json() const;
  std::string to_text() const;
};

// Throws InputError on an empty proposition list or invalid params.
ComprehensionTrace comprehend(const std::vector<Proposition>& propositions, const SemanticSpace& s,
                              const CIParams& params = {});

}  // namespace lsakit::cimodel
