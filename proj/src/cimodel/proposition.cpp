#include <cmath>
#include <cstdio>

#include "lsakit/cimodel.hpp"
#include "lsakit/corpusio.hpp"
#include "util/text.hpp"

namespace lsakit::cimodel {

std::string Proposition::text() const {
  if (args.empty()) return predicate;
  return predicate + "(" + util::join(args, ",") + ")";
}

std::string Proposition::key() const { return args.empty() ? predicate + "()" : text(); }

std::vector<std::string> Proposition::tokens() const {
  std::vector<std::string> t{predicate};
  t.insert(t.end(), args.begin(), args.end());
  return t;
}

namespace {

bool is_delim(char c) { return c == '(' || c == ')' || c == ',' || c == ' ' || c == '\t' || c == '#'; }

// code points before byte offset `pos`, plus one
std::size_t column_of(std::string_view line, std::size_t pos) {
  std::size_t col = 1;
  for (std::size_t i = 0; i < pos && i < line.size(); ++i)
    if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80) ++col;
  return col;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  Proposition parse() {
    Proposition p;
    skip_ws();
    p.predicate = identifier();
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      while (true) {
        skip_ws();
        p.args.push_back(identifier());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail(at_end() ? "unclosed argument list" : "expected ',' or ')'");
      }
      skip_ws();
    }
    if (peek() == '#') pos_ = s_.size();
    if (!at_end()) fail("unexpected text after proposition");
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw PropositionSyntaxError(line_no_, column_of(s_, pos_), msg);
  }
  std::string identifier() {
    const auto begin = pos_;
    while (!at_end() && !is_delim(s_[pos_]) && s_[pos_] != '\r') ++pos_;
    if (pos_ == begin) fail(at_end() ? "unclosed argument list" : "expected identifier");
    return corpusio::normalize(s_.substr(begin, pos_ - begin));
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Proposition> parse_propositions(std::string_view text) {
  std::vector<Proposition> out;
  std::size_t line_no = 0;
  for (auto line : util::split(text, '\n')) {
    ++line_no;
    if (util::is_skippable(line)) continue;
    auto p = LineParser(line, line_no).parse();
    p.source_index = out.size();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Proposition> load_propositions(const std::filesystem::path& path) {
  try {
    return parse_propositions(util::read_file(path));
  } catch (const PropositionSyntaxError& e) {
    throw PropositionSyntaxError(e.line(), e.column(), path.string() + ": " +
                                                           std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

// ---------------------------------------------------------------------------

WmStrategy WmStrategy::fixed_count(std::size_t n) {
  WmStrategy s;
  s.kind = WmKind::fixed_count;
  s.count = n;
  return s;
}

WmStrategy WmStrategy::activation_budget(double total, BudgetMode mode) {
  WmStrategy s;
  s.kind = WmKind::activation_budget;
  s.total = total;
  s.budget_mode = mode;
  return s;
}

WmStrategy WmStrategy::threshold(double theta) {
  WmStrategy s;
  s.kind = WmKind::threshold;
  s.theta = theta;
  return s;
}

namespace {
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace

std::string WmStrategy::describe() const {
  switch (kind) {
    case WmKind::fixed_count:
      return "fixed_count(" + std::to_string(count) + ")";
    case WmKind::activation_budget:
      return "activation_budget(" + num(total) + (budget_mode == BudgetMode::proportional ? ",proportional" : "") + ")";
    case WmKind::threshold:
      return "threshold(" + num(theta) + ")";
  }
  return {};
}

WmStrategy WmStrategy::parse(std::string_view s) {
  const auto bad = [&] { return InputError("bad working-memory strategy '" + std::string(s) + "'"); };
  s = util::trim(s);
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') throw bad();
  const auto name = util::trim(s.substr(0, open));
  auto parts = util::split(s.substr(open + 1, s.size() - open - 2), ',');
  if (name == "fixed_count" && parts.size() == 1) {
    const auto n = util::parse_int(parts[0]);
    if (!n || *n < 1) throw bad();
    return fixed_count(static_cast<std::size_t>(*n));
  }
  if (name == "activation_budget" && (parts.size() == 1 || parts.size() == 2)) {
    const auto t = util::parse_double(parts[0]);
    if (!t || !(*t > 0)) throw bad();
    auto mode = BudgetMode::greedy_prefix;
    if (parts.size() == 2) {
      const auto m = util::trim(parts[1]);
      if (m == "proportional")
        mode = BudgetMode::proportional;
      else if (m != "greedy_prefix")
        throw bad();
    }
    return activation_budget(*t, mode);
  }
  if (name == "threshold" && parts.size() == 1) {
    const auto t = util::parse_double(parts[0]);
    if (!t || *t < 0 || *t > 1) throw bad();
    return threshold(*t);
  }
  throw bad();
}

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::text: return "text";
    case Origin::associate: return "associate";
    case Origin::carried_over: return "carried_over";
    case Origin::episodic_recall: return "episodic_recall";
  }
  return "?";
}

void CIParams::validate() const {
  const auto in = [](double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; };
  if (!in(predication_threshold, -1, 1)) throw InputError("predication_threshold must lie in [-1, 1]");
  if (predication_pool < n_associates) throw InputError("predication_pool must be at least n_associates");
  if (!in(min_weight, 0, 1) || !in(max_weight, 0, 1) || min_weight > max_weight)
    throw InputError("weight band must satisfy 0 <= min_weight <= max_weight <= 1");
  switch (wm.kind) {
    case WmKind::fixed_count:
      if (wm.count < 1) throw InputError("fixed_count needs n >= 1");
      break;
    case WmKind::activation_budget:
      if (!(wm.total > 0) || !std::isfinite(wm.total)) throw InputError("activation_budget needs total > 0");
      break;
    case WmKind::threshold:
      if (!in(wm.theta, 0, 1)) throw InputError("threshold needs 0 <= theta <= 1");
      break;
  }
  if (!(decay_rate > 0 && decay_rate < 1)) throw InputError("decay_rate must lie in (0, 1)");
  if (!(reinforcement_gain >= 0) || !std::isfinite(reinforcement_gain))
    throw InputError("reinforcement_gain must be >= 0");
  if (!std::isfinite(recall_threshold)) throw InputError("recall_threshold must be finite");
  if (!(recall_floor >= 0) || !std::isfinite(recall_floor)) throw InputError("recall_floor must be >= 0");
  if (!(epsilon > 0) || !std::isfinite(epsilon)) throw InputError("epsilon must be > 0");
  if (max_iterations < 1) throw InputError("max_iterations must be >= 1");
}

}  // namespace lsakit::cimodel
