#include <algorithm>
#include <cmath>
#include <map>

#include "lsakit/vecspace.hpp"

namespace lsakit::vecspace {

std::optional<std::size_t> TermDocMatrix::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TermDocMatrix build_matrix(const corpusio::Corpus& c, const MatrixOptions& options) {
  std::vector<std::vector<std::string>> docs;
  std::vector<std::string> ids;
  docs.reserve(c.paragraphs.size());
  ids.reserve(c.paragraphs.size());
  for (const auto& p : c.paragraphs) {
    docs.push_back(p.tokens);
    ids.push_back(p.id);
  }
  return build_matrix(docs, ids, options);
}

TermDocMatrix build_matrix(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& ids, const MatrixOptions& options) {
  if (docs.empty()) throw InputError("empty corpus");
  if (!ids.empty() && ids.size() != docs.size())
    throw InputError("paragraph id count does not match paragraph count");
  if (options.min_count < 1) throw InputError("min_count must be >= 1");

  std::map<std::string, std::uint64_t> totals;
  for (const auto& doc : docs)
    for (const auto& t : doc)
      if (!options.stop_words || !options.stop_words->contains(t)) ++totals[t];

  TermDocMatrix m;
  for (const auto& [term, total] : totals) {
    if (total < options.min_count) continue;
    m.index_.emplace(term, m.terms_.size());
    m.terms_.push_back(term);
  }
  if (m.terms_.empty()) throw DataError("no term reaches min_count " + std::to_string(options.min_count));

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::map<std::size_t, double> col;
    for (const auto& t : docs[d]) {
      const auto it = m.index_.find(t);
      if (it != m.index_.end()) col[it->second] += 1.0;
    }
    for (const auto& [row, count] : col)
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(d), count);
  }
  m.counts_.resize(static_cast<Eigen::Index>(m.terms_.size()), static_cast<Eigen::Index>(docs.size()));
  m.counts_.setFromTriplets(triplets.begin(), triplets.end());
  m.counts_.makeCompressed();

  if (ids.empty()) {
    m.paragraph_ids_.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) m.paragraph_ids_.push_back(std::to_string(d));
  } else {
    m.paragraph_ids_ = ids;
  }
  return m;
}

WeightedMatrix log_entropy_weight(const TermDocMatrix& m) {
  const std::size_t n_terms = m.n_terms();
  const std::size_t n_docs = m.n_docs();
  const SparseMatrix& counts = m.counts();

  std::vector<double> tf(n_terms, 0.0), plogp(n_terms, 0.0);
  std::vector<std::uint64_t> df(n_terms, 0);
  for (Eigen::Index col = 0; col < counts.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(counts, col); it; ++it) {
      tf[static_cast<std::size_t>(it.row())] += it.value();
      df[static_cast<std::size_t>(it.row())] += 1;
    }
  for (Eigen::Index col = 0; col < counts.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(counts, col); it; ++it) {
      const auto row = static_cast<std::size_t>(it.row());
      const double p = it.value() / tf[row];
      plogp[row] += p * std::log2(p);
    }

  WeightedMatrix w;
  w.n_docs = n_docs;
  w.stats.resize(n_terms);
  const double log_n = std::log2(static_cast<double>(n_docs));
  for (std::size_t t = 0; t < n_terms; ++t) {
    double g = n_docs > 1 ? 1.0 + plogp[t] / log_n : 1.0;
    g = std::clamp(g, 0.0, 1.0);
    w.stats[t] = TermStats{m.terms()[t], static_cast<std::uint64_t>(tf[t]), df[t], g};
  }

  w.cells = counts;
  for (Eigen::Index col = 0; col < w.cells.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(w.cells, col); it; ++it)
      it.valueRef() = std::log2(it.value() + 1.0) * w.stats[static_cast<std::size_t>(it.row())].global_weight;
  return w;
}

}  // namespace lsakit::vecspace
