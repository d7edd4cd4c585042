#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "lsakit/vecspace.hpp"

namespace lsakit::vecspace {
namespace {

// Matrices at or below this size go through a dense bidiagonal SVD.
constexpr Eigen::Index kDenseMaxSide = 2000;
constexpr double kDenseMaxCells = 2.5e7;

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

void fix_signs(SvdResult& r) {
  for (Eigen::Index j = 0; j < r.u.cols(); ++j) {
    Eigen::Index best = 0;
    r.u.col(j).cwiseAbs().maxCoeff(&best);
    if (r.u(best, j) < 0.0) {
      r.u.col(j) *= -1.0;
      r.v.col(j) *= -1.0;
    }
  }
}

SvdResult dense_svd(const SparseMatrix& a, std::size_t k) {
  const Eigen::MatrixXd dense(a);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto kk = static_cast<Eigen::Index>(k);
  SvdResult r;
  r.u = svd.matrixU().leftCols(kk);
  r.s = svd.singularValues().head(kk);
  r.v = svd.matrixV().leftCols(kk);
  r.method_used = SvdMethod::dense;
  r.iterations = 1;
  return r;
}

// Seeded randomized subspace iteration with a Rayleigh-Ritz step each round;
// stops once the leading k Ritz values settle.
SvdResult randomized_svd(const SparseMatrix& a, const SvdOptions& opt) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const auto k = static_cast<Eigen::Index>(opt.k);
  const Eigen::Index l = std::min<Eigen::Index>(k + static_cast<Eigen::Index>(opt.oversample), std::min(m, n));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd omega(n, l);
  for (Eigen::Index j = 0; j < l; ++j)
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = gauss(rng);

  const SparseMatrix at = a.transpose();
  Eigen::MatrixXd q = orthonormal_basis(a * omega);
  Eigen::VectorXd previous;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    const Eigen::MatrixXd z = orthonormal_basis(at * q);
    q = orthonormal_basis(a * z);
    // B^T = A^T Q, an n x l matrix; its left/right factors swap roles.
    const Eigen::MatrixXd bt = at * q;
    Eigen::BDCSVD<Eigen::MatrixXd> small(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = small.singularValues().head(k);
    const bool settled =
        previous.size() == k &&
        (s - previous).cwiseAbs().maxCoeff() <= opt.tolerance * std::max(s(0), 1e-300);
    if (settled || l == std::min(m, n)) {
      SvdResult r;
      r.u = q * small.matrixV().leftCols(k);
      r.s = s;
      r.v = small.matrixU().leftCols(k);
      r.method_used = SvdMethod::randomized;
      r.iterations = it;
      return r;
    }
    previous = s;
  }
  throw ConvergenceError("randomized SVD did not converge", opt.max_iterations);
}

}  // namespace

SvdResult compute_svd(const SparseMatrix& a, const SvdOptions& options) {
  const auto max_k = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  if (options.k < 1 || options.k > max_k)
    throw InputError("k out of range: " + std::to_string(options.k) + " (valid 1.." +
                     std::to_string(max_k) + ")");

  SvdMethod method = options.method;
  if (method == SvdMethod::automatic) {
    const bool small = std::min(a.rows(), a.cols()) <= kDenseMaxSide &&
                       static_cast<double>(a.rows()) * static_cast<double>(a.cols()) <= kDenseMaxCells;
    method = small ? SvdMethod::dense : SvdMethod::randomized;
  }
  SvdResult r = method == SvdMethod::dense ? dense_svd(a, options.k) : randomized_svd(a, options);
  if (!r.u.allFinite() || !r.s.allFinite())
    throw ConvergenceError("SVD produced non-finite values", r.iterations);
  fix_signs(r);
  return r;
}

}  // namespace lsakit::vecspace
