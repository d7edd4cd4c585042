#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lsakit/evalsuite.hpp"

namespace lsakit::evalsuite {

double t_two_tailed_p(double t, double df) {
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  if (df <= 0) throw InputError("t distribution needs df > 0");
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(1.0, p);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson: samples differ in length");
  if (x.size() < 3) throw InputError("pearson: needs at least 3 pairs");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  Correlation c;
  c.n = x.size();
  if (sxx <= 0.0 || syy <= 0.0) {
    c.degenerate = true;
    return c;
  }
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = n - 2.0;
  if (std::abs(c.r) >= 1.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    c.p = t_two_tailed_p(t, df);
  }
  return c;
}

TTest paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("paired t-test: samples differ in length");
  if (a.size() < 2) throw InputError("paired t-test: needs at least 2 pairs");
  const double n = static_cast<double>(a.size());
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0;
  for (double v : d) ss += (v - mean) * (v - mean);
  TTest r;
  r.df = a.size() - 1;
  if (ss <= 0.0) {
    r.degenerate = true;
    if (mean == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = mean > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  r.t = mean / (sd / std::sqrt(n));
  r.p = t_two_tailed_p(r.t, static_cast<double>(r.df));
  return r;
}

double shannon_entropy(std::span<const double> p) {
  if (p.empty()) throw InputError("entropy of an empty distribution");
  double total = 0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("entropy: probabilities must be finite and >= 0");
    total += v;
  }
  if (total <= 0.0) throw InputError("entropy: distribution has no mass");
  double h = 0;
  for (double v : p)
    if (v > 0) {
      const double q = v / total;
      h -= q * std::log2(q);
    }
  return std::max(0.0, h);
}

}  // namespace lsakit::evalsuite
