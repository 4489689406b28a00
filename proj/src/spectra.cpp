#include "hivelab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hivelab::spectra {

SpecTuple::SpecTuple(std::vector<double> entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("SpecTuple: empty tuple");
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
    if (entries_[i] < entries_[i + 1] - tol)
      throw std::invalid_argument("SpecTuple: entries not non-increasing");
  }
}

bool SpecTuple::strictly_decreasing() const {
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
    if (!(entries_[i] > entries_[i + 1])) return false;
  return true;
}

double SpecTuple::sum() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

double SpecTuple::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

SpecTuple SpecTuple::staircase(int n) {
  if (n < 1) throw std::invalid_argument("staircase: n must be >= 1");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return SpecTuple(std::move(v));
}

double vandermonde(const SpecTuple& x) {
  const std::size_t n = x.size();
  if (n > 30) {
    const SignedLog sl = vandermonde_log(x);
    if (sl.sign == 0.0) return 0.0;
    return sl.sign * std::exp(sl.log_abs);
  }
  double prod = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) prod *= x[i] - x[j];
  return prod;
}

SignedLog vandermonde_log(const SpecTuple& x) {
  double sign = 1.0;
  double log_abs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = x[i] - x[j];
      if (d == 0.0)
        return {0.0, -std::numeric_limits<double>::infinity()};
      if (d < 0.0) sign = -sign;
      log_abs += std::log(std::abs(d));
    }
  }
  return {sign, log_abs};
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double pi = std::numbers::pi;
  return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) / (4.0 * pi);
}

double semicircle_quantile(int n, int i) {
  if (n < 1 || i < 1 || i > n)
    throw std::invalid_argument("semicircle_quantile: need 1 <= i <= n");
  if (i == n) return 2.0;
  const double target = static_cast<double>(i) / n;
  double lo = -2.0, hi = 2.0;
  // The CDF is monotone with vanishing derivative at the endpoints; bisection
  // stays robust there where Newton would stall.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

WeylTraceReport weyl_trace_check(const SpecTuple& lambda, const SpecTuple& mu,
                                 const SpecTuple& nu, double trace_tol_unit,
                                 double weyl_tol) {
  const std::size_t n = lambda.size();
  if (mu.size() != n || nu.size() != n)
    throw std::invalid_argument("weyl_trace_check: length mismatch");

  WeylTraceReport rep;
  const double scale =
      std::max({1.0, lambda.max_abs(), mu.max_abs(), nu.max_abs()});
  rep.trace_residual = nu.sum() - lambda.sum() - mu.sum();
  rep.trace_ok =
      std::abs(rep.trace_residual) <= trace_tol_unit * static_cast<double>(n) * scale;

  rep.worst_weyl_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j + i - 1 <= n; ++j) {
      const double excess = nu[i + j - 2] - lambda[i - 1] - mu[j - 1];
      if (excess > rep.worst_weyl_excess) {
        rep.worst_weyl_excess = excess;
        rep.worst_i = static_cast<int>(i);
        rep.worst_j = static_cast<int>(j);
      }
    }
  }
  rep.weyl_ok = rep.worst_weyl_excess <= weyl_tol;
  return rep;
}

bool majorization_check(const SpecTuple& lambda, const std::vector<double>& a,
                        double trace_tol, double prefix_tol) {
  const std::size_t n = lambda.size();
  if (a.size() != n)
    throw std::invalid_argument("majorization_check: length mismatch");

  std::vector<double> sorted = a;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  const double scale = std::max(1.0, lambda.max_abs());
  double pa = 0.0, pl = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    pa += sorted[k];
    pl += lambda[k];
    if (k + 1 < n && pa > pl + prefix_tol * scale) return false;
  }
  return std::abs(pa - pl) <= trace_tol * scale;
}

}  // namespace hivelab::spectra
