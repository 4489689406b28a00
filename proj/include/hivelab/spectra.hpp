#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hivelab::spectra {

/// Ordered spectrum: a non-increasing real n-vector.
class SpecTuple {
 public:
  /// Entries must be non-increasing up to `tol` (default: exactly).
  explicit SpecTuple(std::vector<double> entries, double tol = 0.0);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  /// Membership in the open cone: all inequalities strict.
  bool strictly_decreasing() const;

  double sum() const;
  double spread() const { return entries_.front() - entries_.back(); }
  double max_abs() const;

  /// The staircase tuple (n, n-1, ..., 1).
  static SpecTuple staircase(int n);

 private:
  std::vector<double> entries_;
};

/// Product of pairwise differences over i < j. Switches internally to a
/// log-magnitude accumulation for n > 30 so intermediate products cannot
/// overflow; the returned double may still be +-inf if the value itself does.
double vandermonde(const SpecTuple& x);

struct SignedLog {
  double sign;     // -1, 0, or +1
  double log_abs;  // log of |value|; -inf when sign == 0
};
SignedLog vandermonde_log(const SpecTuple& x);

/// CDF of the semicircle density (1/2pi) sqrt(4-x^2) on [-2,2].
double semicircle_cdf(double x);

/// gamma_i solving F(gamma_i) = i/n, by bisection to 1e-12.
double semicircle_quantile(int n, int i);

struct WeylTraceReport {
  bool trace_ok = false;
  bool weyl_ok = false;
  double trace_residual = 0.0;     // sum(nu) - sum(lambda) - sum(mu)
  double worst_weyl_excess = 0.0;  // max over (i,j) of nu_{i+j-1}-lambda_i-mu_j
  int worst_i = 0, worst_j = 0;    // 1-based location of the worst excess
  bool pass() const { return trace_ok && weyl_ok; }
};

/// Necessary conditions only: the trace identity and the two-index linear
/// inequalities. The full recursive inequality system is out of scope.
WeylTraceReport weyl_trace_check(const SpecTuple& lambda, const SpecTuple& mu,
                                 const SpecTuple& nu,
                                 double trace_tol_unit = 1e-8,
                                 double weyl_tol = 1e-9);

/// True iff `a` lies in the permutahedron of lambda: equal sums and every
/// prefix of sorted(a) dominated by the corresponding prefix of lambda.
bool majorization_check(const SpecTuple& lambda, const std::vector<double>& a,
                        double trace_tol = 1e-8, double prefix_tol = 1e-9);

}  // namespace hivelab::spectra
