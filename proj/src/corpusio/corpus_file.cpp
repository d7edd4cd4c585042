#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "lsakit/corpusio.hpp"
#include "lsakit/errors.hpp"
#include "util/text.hpp"

namespace lsakit::corpusio {
namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void write_corpus(std::ostream& out, const Corpus& c) {
  for (const auto& p : c.paragraphs) {
    out << p.id << '\t' << p.level.value() << '\t' << to_string(p.category) << '\t'
        << (p.readability ? shortest(*p.readability) : std::string("-")) << '\t'
        << util::join(p.tokens, " ") << '\t';
    for (std::size_t i = 0; i < p.sentence_lengths.size(); ++i)
      out << (i ? "," : "") << p.sentence_lengths[i];
    out << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  write_corpus(out, c);
}

Corpus read_corpus(std::istream& in) {
  Corpus c;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::is_skippable(line)) continue;
    const auto at = "corpus line " + std::to_string(line_no);
    const auto cols = util::split(line, '\t');
    if (cols.size() != 6) throw InputError(at + ": expected 6 tab-separated fields");

    Paragraph p;
    p.id = std::string(cols[0]);
    if (!seen.insert(p.id).second) throw InputError(at + ": duplicate paragraph id " + p.id);
    const auto level = util::parse_int(cols[1]);
    if (!level) throw InputError(at + ": bad level");
    p.level = AgeLevel(static_cast<int>(*level));
    const auto cat = parse_category(cols[2]);
    if (!cat) throw InputError(at + ": bad category '" + std::string(cols[2]) + "'");
    p.category = *cat;
    if (util::trim(cols[3]) != "-") {
      const auto r = util::parse_double(cols[3]);
      if (!r) throw InputError(at + ": bad readability");
      p.readability = *r;
    }
    for (auto t : util::split(cols[4], ' '))
      if (!t.empty()) p.tokens.emplace_back(t);
    std::size_t total = 0;
    for (auto s : util::split(cols[5], ',')) {
      const auto n = util::parse_int(s);
      if (!n || *n <= 0) throw InputError(at + ": bad sentence length list");
      p.sentence_lengths.push_back(static_cast<std::size_t>(*n));
      total += static_cast<std::size_t>(*n);
    }
    if (p.tokens.empty()) throw InputError(at + ": paragraph has no tokens");
    if (total != p.tokens.size())
      throw InputError(at + ": sentence lengths do not sum to the token count");
    c.paragraphs.push_back(std::move(p));
  }
  return c;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file: " + path.string());
  return read_corpus(in);
}

}  // namespace lsakit::corpusio
