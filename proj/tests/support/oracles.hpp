#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library or into Eigen's decompositions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;  // row-major, rows x cols

inline Dense transpose(const Dense& a) {
  if (a.empty()) return {};
  Dense t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

struct Svd {
  Dense u;                 // rows x r, columns orthonormal
  std::vector<double> s;   // r, descending
};

// One-sided Jacobi (Hestenes) on a tall matrix: rotate column pairs until
// all pairs are orthogonal; singular values are the final column norms.
inline Svd jacobi_tall(Dense a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i][p] * a[i][p];
          beta += a[i][q] * a[i][q];
          gamma += a[i][p] * a[i][q];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        if (std::abs(gamma) < 1e-300) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a[i][p];
          const double aq = a[i][q];
          a[i][p] = c * ap - s * aq;
          a[i][q] = s * ap + c * aq;
        }
      }
    if (off < 1e-15) break;
  }
  std::vector<std::pair<double, std::size_t>> norms;
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) ss += a[i][j] * a[i][j];
    norms.emplace_back(std::sqrt(ss), j);
  }
  std::stable_sort(norms.begin(), norms.end(), [](auto& x, auto& y) { return x.first > y.first; });
  Svd out;
  out.u.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    const auto [sigma, j] = norms[r];
    out.s.push_back(sigma);
    for (std::size_t i = 0; i < m; ++i) out.u[i][r] = sigma > 0 ? a[i][j] / sigma : 0.0;
  }
  return out;
}

// Left singular vectors and values of any matrix. For wide matrices the
// decomposition runs on the transpose and U is recovered as A V / sigma.
inline Svd svd(const Dense& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  if (m >= n) return jacobi_tall(a);
  // A^T = U' S V'^T, so A = V' S U'^T and V' = A U' / sigma.
  Svd t = jacobi_tall(transpose(a));
  Svd out;
  out.s = t.s;
  out.u.assign(m, std::vector<double>(t.s.size(), 0.0));
  for (std::size_t r = 0; r < t.s.size(); ++r) {
    if (t.s[r] == 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += a[i][j] * t.u[j][r];
      out.u[i][r] = acc / t.s[r];
    }
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  return dot(a, b) / std::sqrt(dot(a, a) * dot(b, b));
}

// Rows of U_k * S_k.
inline Dense term_vectors(const Svd& d, std::size_t k) {
  Dense out(d.u.size(), std::vector<double>(k));
  for (std::size_t i = 0; i < d.u.size(); ++i)
    for (std::size_t r = 0; r < k; ++r) out[i][r] = d.u[i][r] * d.s[r];
  return out;
}

// Plain hash-map counting pass: term -> per-document counts.
inline std::map<std::string, std::vector<int>> count_terms(
    const std::vector<std::vector<std::string>>& docs) {
  std::map<std::string, std::vector<int>> out;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (const auto& t : docs[d]) {
      auto& row = out[t];
      row.resize(docs.size(), 0);
      row[d] += 1;
    }
  return out;
}

inline double entropy_global_weight(const std::vector<double>& counts) {
  const double n = static_cast<double>(counts.size());
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double acc = 0;
  for (double c : counts)
    if (c > 0) acc += (c / total) * std::log2(c / total);
  return 1.0 + acc / std::log2(n);
}

inline double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Textbook sample Pearson r, computed from raw sums.
inline double pearson_from_sums(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace oracle
