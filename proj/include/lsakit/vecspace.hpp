#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lsakit/corpusio.hpp"
#include "lsakit/errors.hpp"

namespace lsakit::vecspace {

using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double>;

// ---------------------------------------------------------------------------
// Term-paragraph counts

struct MatrixOptions {
  std::size_t min_count = 2;
  // Optional stop list; listed terms never enter the vocabulary.
  const std::unordered_set<std::string>* stop_words = nullptr;
};

class TermDocMatrix {
 public:
  TermDocMatrix() = default;

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::optional<std::size_t> index_of(std::string_view term) const;
  // terms x paragraphs; values are exact occurrence counts.
  const SparseMatrix& counts() const noexcept { return counts_; }
  const std::vector<std::string>& paragraph_ids() const noexcept { return paragraph_ids_; }
  std::size_t n_terms() const noexcept { return terms_.size(); }
  std::size_t n_docs() const noexcept { return paragraph_ids_.size(); }

 private:
  friend TermDocMatrix build_matrix(const std::vector<std::vector<std::string>>&,
                                    const std::vector<std::string>&, const MatrixOptions&);
  std::vector<std::string> terms_;  // lexicographic
  std::unordered_map<std::string, std::size_t> index_;
  SparseMatrix counts_;
  std::vector<std::string> paragraph_ids_;
};

TermDocMatrix build_matrix(const corpusio::Corpus& c, const MatrixOptions& options = {});

// Raw form used by build_matrix(Corpus) and by tests; ids may be empty, in
// which case columns are numbered.
TermDocMatrix build_matrix(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& ids = {},
                           const MatrixOptions& options = {});

// ---------------------------------------------------------------------------
// Log-entropy weighting

struct TermStats {
  std::string term;
  std::uint64_t tf_total = 0;
  std::uint64_t df = 0;
  double global_weight = 0.0;  // in [0, 1]; low = evenly spread, well known

  friend bool operator==(const TermStats&, const TermStats&) = default;
};

struct WeightedMatrix {
  SparseMatrix cells;  // log2(count + 1) * G(term)
  std::vector<TermStats> stats;
  std::size_t n_docs = 0;
};

// G(t) = 1 + sum_p p_tp log2 p_tp / log2 n_docs, with p_tp = count_tp / tf_total.
// A single-paragraph collection gives G = 1 for every term.
WeightedMatrix log_entropy_weight(const TermDocMatrix& m);

// ---------------------------------------------------------------------------
// Truncated SVD

enum class SvdMethod { automatic, dense, randomized };

struct SvdOptions {
  std::size_t k = 300;
  std::uint64_t seed = 0;
  SvdMethod method = SvdMethod::automatic;
  std::size_t oversample = 10;
  std::size_t max_iterations = 300;
  double tolerance = 1e-10;  // relative change of the leading k singular values
};

struct SvdResult {
  Eigen::MatrixXd u;  // rows x k, orthonormal columns
  Eigen::VectorXd s;  // k, descending, non-negative
  Eigen::MatrixXd v;  // cols x k
  SvdMethod method_used = SvdMethod::dense;
  std::size_t iterations = 0;
};

// Rank-k SVD of `a`. Column signs are fixed so that the largest-magnitude
// entry of each left singular vector is positive, which makes the result a
// deterministic function of (a, options).
SvdResult compute_svd(const SparseMatrix& a, const SvdOptions& options);

// ---------------------------------------------------------------------------
// Semantic space

enum class Scaling { sigma, none };
enum class Weighting { log_entropy };

std::string_view to_string(Scaling s);
std::optional<Scaling> parse_scaling(std::string_view s);
std::string_view to_string(Weighting w);
std::optional<Weighting> parse_weighting(std::string_view s);
std::string_view to_string(SvdMethod m);
std::optional<SvdMethod> parse_svd_method(std::string_view s);

struct BuildConfig {
  std::size_t k = 300;
  std::size_t min_count = 2;
  std::uint64_t seed = 0;
  Scaling scaling = Scaling::sigma;
  Weighting weighting = Weighting::log_entropy;
  SvdMethod method = SvdMethod::automatic;

  friend bool operator==(const BuildConfig&, const BuildConfig&) = default;
};

// Immutable after construction; safe to share across threads for reads.
class SemanticSpace {
 public:
  SemanticSpace(std::vector<TermStats> stats, RowMatrix vectors, Vector singular_values,
                BuildConfig config, std::size_t n_docs);

  std::size_t size() const noexcept { return stats_.size(); }
  std::size_t k() const noexcept { return static_cast<std::size_t>(singular_values_.size()); }
  std::size_t n_docs() const noexcept { return n_docs_; }
  const BuildConfig& config() const noexcept { return config_; }

  const std::vector<TermStats>& term_stats() const noexcept { return stats_; }
  const TermStats& stats(std::size_t i) const { return stats_.at(i); }
  const std::string& term(std::size_t i) const { return stats_.at(i).term; }
  std::optional<std::size_t> index_of(std::string_view term) const;
  bool contains(std::string_view term) const { return index_of(term).has_value(); }

  const RowMatrix& vectors() const noexcept { return vectors_; }
  const Vector& singular_values() const noexcept { return singular_values_; }
  double row_norm(std::size_t i) const { return norms_[i]; }

  friend bool operator==(const SemanticSpace& a, const SemanticSpace& b);

 private:
  std::vector<TermStats> stats_;
  std::unordered_map<std::string, std::size_t> index_;
  RowMatrix vectors_;
  Vector singular_values_;
  std::vector<double> norms_;
  BuildConfig config_;
  std::size_t n_docs_ = 0;
};

SemanticSpace truncated_svd(const WeightedMatrix& weighted, const BuildConfig& config);

// build_matrix -> log_entropy_weight -> truncated_svd
SemanticSpace build_space(const TermDocMatrix& m, const BuildConfig& config);
SemanticSpace build_space(const corpusio::Corpus& c, const BuildConfig& config,
                          const std::unordered_set<std::string>* stop_words = nullptr);

// ---------------------------------------------------------------------------
// Queries

// Throws DegenerateVectorError when either vector has zero norm.
double cosine(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

// Throws UnknownWordError.
Vector term_vector(const SemanticSpace& s, std::string_view word);

struct Projection {
  Vector vector;
  std::size_t in_vocab = 0;
  std::size_t total = 0;
  double coverage() const {
    return total == 0 ? 0.0 : static_cast<double>(in_vocab) / static_cast<double>(total);
  }
};

// Sum over distinct in-vocabulary tokens of log2(tf + 1) * G * term_vector.
// Throws EmptyProjectionError when no token is in the vocabulary.
Projection fold_in(const SemanticSpace& s, const std::vector<std::string>& tokens);

struct WeightBand {
  double min = 0.0;
  double max = 1.0;
  bool contains(double g) const { return g >= min && g <= max; }
};

struct Neighbor {
  std::string term;
  double cosine = 0.0;
};

// Top-n terms by cosine among terms whose global weight lies in `band`.
// Terms listed in `exclude` and terms with zero vectors are skipped. Ties
// are broken by lexicographic term order.
std::vector<Neighbor> neighbors(const SemanticSpace& s, const Eigen::Ref<const Vector>& probe,
                                std::size_t n, WeightBand band = {},
                                std::span<const std::string> exclude = {});

// Term probe: the probe term itself is always excluded. Throws UnknownWordError.
std::vector<Neighbor> neighbors(const SemanticSpace& s, std::string_view probe, std::size_t n,
                                WeightBand band = {});

// ---------------------------------------------------------------------------
// Space file (layout in docs/space-format.md)

inline constexpr std::uint32_t kSpaceFormatVersion = 2;

class SpaceFormatError : public InputError {
 public:
  enum class Kind { bad_magic, unsupported_version, truncated, corrupt };
  SpaceFormatError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string save_space(const SemanticSpace& s);
SemanticSpace load_space(std::string_view bytes);

void write_space_file(const std::filesystem::path& path, const SemanticSpace& s);
SemanticSpace read_space_file(const std::filesystem::path& path);

}  // namespace lsakit::vecspace
