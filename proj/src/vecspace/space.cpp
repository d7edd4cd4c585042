#include <algorithm>
#include <cmath>
#include <map>

#include "lsakit/vecspace.hpp"

namespace lsakit::vecspace {

std::string_view to_string(Scaling s) { return s == Scaling::sigma ? "sigma" : "none"; }

std::optional<Scaling> parse_scaling(std::string_view s) {
  if (s == "sigma") return Scaling::sigma;
  if (s == "none") return Scaling::none;
  return std::nullopt;
}

std::string_view to_string(Weighting) { return "log-entropy"; }

std::optional<Weighting> parse_weighting(std::string_view s) {
  if (s == "log-entropy" || s == "log_entropy") return Weighting::log_entropy;
  return std::nullopt;
}

std::string_view to_string(SvdMethod m) {
  switch (m) {
    case SvdMethod::automatic: return "auto";
    case SvdMethod::dense: return "dense";
    case SvdMethod::randomized: return "randomized";
  }
  return "?";
}

std::optional<SvdMethod> parse_svd_method(std::string_view s) {
  for (auto m : {SvdMethod::automatic, SvdMethod::dense, SvdMethod::randomized})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

SemanticSpace::SemanticSpace(std::vector<TermStats> stats, RowMatrix vectors,
                             Vector singular_values, BuildConfig config, std::size_t n_docs)
    : stats_(std::move(stats)),
      vectors_(std::move(vectors)),
      singular_values_(std::move(singular_values)),
      config_(config),
      n_docs_(n_docs) {
  if (static_cast<std::size_t>(vectors_.rows()) != stats_.size())
    throw InputError("semantic space: vector count does not match vocabulary size");
  if (vectors_.cols() != singular_values_.size())
    throw InputError("semantic space: vector width does not match singular value count");
  if (!vectors_.allFinite() || !singular_values_.allFinite())
    throw InputError("semantic space: non-finite values");
  for (Eigen::Index i = 0; i < singular_values_.size(); ++i) {
    if (singular_values_(i) < 0.0) throw InputError("semantic space: negative singular value");
    if (i > 0 && singular_values_(i) > singular_values_(i - 1) + 1e-12)
      throw InputError("semantic space: singular values not descending");
  }
  index_.reserve(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i)
    if (!index_.emplace(stats_[i].term, i).second)
      throw InputError("semantic space: duplicate term '" + stats_[i].term + "'");
  norms_.resize(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i)
    norms_[i] = vectors_.row(static_cast<Eigen::Index>(i)).norm();
}

std::optional<std::size_t> SemanticSpace::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const SemanticSpace& a, const SemanticSpace& b) {
  return a.stats_ == b.stats_ && a.config_ == b.config_ && a.n_docs_ == b.n_docs_ &&
         a.vectors_.rows() == b.vectors_.rows() && a.vectors_.cols() == b.vectors_.cols() &&
         a.vectors_ == b.vectors_ && a.singular_values_ == b.singular_values_;
}

SemanticSpace truncated_svd(const WeightedMatrix& weighted, const BuildConfig& config) {
  SvdOptions opt;
  opt.k = config.k;
  opt.seed = config.seed;
  opt.method = config.method;
  SvdResult r = compute_svd(weighted.cells, opt);

  RowMatrix vectors = r.u;
  if (config.scaling == Scaling::sigma) vectors = r.u * r.s.asDiagonal();
  return SemanticSpace(weighted.stats, std::move(vectors), std::move(r.s), config, weighted.n_docs);
}

SemanticSpace build_space(const TermDocMatrix& m, const BuildConfig& config) {
  return truncated_svd(log_entropy_weight(m), config);
}

SemanticSpace build_space(const corpusio::Corpus& c, const BuildConfig& config,
                          const std::unordered_set<std::string>* stop_words) {
  MatrixOptions mo;
  mo.min_count = config.min_count;
  mo.stop_words = stop_words;
  return build_space(build_matrix(c, mo), config);
}

// ---------------------------------------------------------------------------

double cosine(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size()) throw InputError("cosine: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DegenerateVectorError();
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

Vector term_vector(const SemanticSpace& s, std::string_view word) {
  const auto i = s.index_of(word);
  if (!i) throw UnknownWordError(std::string(word));
  return s.vectors().row(static_cast<Eigen::Index>(*i)).transpose();
}

Projection fold_in(const SemanticSpace& s, const std::vector<std::string>& tokens) {
  std::map<std::size_t, std::size_t> tf;
  Projection p;
  p.total = tokens.size();
  for (const auto& t : tokens) {
    if (const auto i = s.index_of(t)) {
      ++tf[*i];
      ++p.in_vocab;
    }
  }
  if (tf.empty()) throw EmptyProjectionError();
  p.vector = Vector::Zero(static_cast<Eigen::Index>(s.k()));
  for (const auto& [i, count] : tf) {
    const double w = std::log2(static_cast<double>(count) + 1.0) * s.stats(i).global_weight;
    p.vector += w * s.vectors().row(static_cast<Eigen::Index>(i)).transpose();
  }
  return p;
}

std::vector<Neighbor> neighbors(const SemanticSpace& s, const Eigen::Ref<const Vector>& probe,
                                std::size_t n, WeightBand band,
                                std::span<const std::string> exclude) {
  if (n < 1) throw InputError("neighbors: n must be >= 1");
  if (static_cast<std::size_t>(probe.size()) != s.k()) throw InputError("neighbors: dimension mismatch");
  const double probe_norm = probe.norm();
  if (probe_norm == 0.0) throw DegenerateVectorError();

  std::vector<bool> skip(s.size(), false);
  for (const auto& e : exclude)
    if (const auto i = s.index_of(e)) skip[*i] = true;

  const Vector scores = s.vectors() * probe;
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (skip[i] || s.row_norm(i) == 0.0 || !band.contains(s.stats(i).global_weight)) continue;
    const double c = std::clamp(scores(static_cast<Eigen::Index>(i)) / (s.row_norm(i) * probe_norm), -1.0, 1.0);
    out.push_back({s.term(i), c});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.term < b.term;
  };
  const std::size_t keep = std::min(n, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), better);
  out.resize(keep);
  return out;
}

std::vector<Neighbor> neighbors(const SemanticSpace& s, std::string_view probe, std::size_t n,
                                WeightBand band) {
  const Vector v = term_vector(s, probe);
  const std::string self(probe);
  return neighbors(s, v, n, band, std::span<const std::string>(&self, 1));
}

}  // namespace lsakit::vecspace
