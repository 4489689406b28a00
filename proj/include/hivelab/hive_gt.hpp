#pragma once

#include <string>
#include <vector>

#include "hivelab/spectra.hpp"

namespace hivelab::hive {

using spectra::SpecTuple;

/// Scale-aware default slack for invariant checks, 1e-9 * (1 + max|value|).
inline double default_tol(double max_abs_value) {
  return 1e-9 * (1.0 + max_abs_value);
}

/// Real values on the triangle {(i,j) : 0 <= i <= j <= n}, stored row-major
/// with index (i,j) -> j(j+1)/2 + i.
class Hive {
 public:
  explicit Hive(int n);

  int n() const { return n_; }
  double& at(int i, int j) { return values_[index(i, j)]; }
  double at(int i, int j) const { return values_[index(i, j)]; }
  const std::vector<double>& values() const { return values_; }
  double max_abs() const;

 private:
  std::size_t index(int i, int j) const;
  int n_;
  std::vector<double> values_;
};

/// Triangular array lambda_{j,k}, 1 <= j <= k <= n; row k holds the spectrum
/// of level k.
class GTPattern {
 public:
  explicit GTPattern(int n);

  int n() const { return n_; }
  double& at(int j, int k) { return values_[index(j, k)]; }
  double at(int j, int k) const { return values_[index(j, k)]; }
  std::vector<double> row(int k) const;
  SpecTuple top_row() const;
  double row_sum(int k) const;
  double max_abs() const;

  /// Worst interlacing violation (0 when none): max over j,k of
  /// max(lambda_{j,k} - lambda_{j,k+1}, lambda_{j+1,k+1} - lambda_{j,k}).
  double interlacing_violation() const;
  bool interlacing(double tol = -1.0) const;  // tol < 0 -> scale-aware default

 private:
  std::size_t index(int j, int k) const;
  int n_;
  std::vector<double> values_;
};

/// A hive paired with the pattern describing its nu-edge.
struct AugmentedHive {
  Hive h;
  GTPattern pattern;
};

/// Throws unless the pattern's top row matches the hive's nu-boundary
/// increments within tol (tol < 0 -> scale-aware default).
void validate_augmented(const AugmentedHive& ah, double tol = -1.0);

struct RhombusViolation {
  int type;  // 1, 2, 3 matching the three rhombus orientations
  int i, j;  // anchor vertex A
  double excess;
};

/// Empty iff h(A)+h(C) <= h(B)+h(D)+tol across the short diagonal of every
/// unit rhombus contained in the triangle.
std::vector<RhombusViolation> check_rhombus_concave(const Hive& h, double tol);

struct HiveBoundary {
  SpecTuple lambda, mu, nu;
};

/// Edge increments of the three boundary tuples; tol < 0 -> scale-aware
/// default. Throws if an extracted tuple increases beyond tol.
HiveBoundary hive_boundary(const Hive& h, double tol = -1.0);

struct GTBoundary {
  SpecTuple lambda;        // top row
  std::vector<double> a;   // row-sum differences
};

GTBoundary gt_boundary(const GTPattern& g);

/// Non-increasing tuple whose minimum gap strictly exceeds a spread bound.
class GapTuple {
 public:
  GapTuple(SpecTuple entries, double spread_bound);

  const SpecTuple& entries() const { return entries_; }
  double min_gap() const;
  double spread_bound() const { return spread_bound_; }

  /// Arithmetic tuple (G(n-1), G(n-2), ..., 0) with gap constant G.
  static GapTuple arithmetic(int n, double gap_constant, double spread_bound);

 private:
  SpecTuple entries_;
  double spread_bound_;
};

/// The linear embedding h(i,j) = Lambda_1+...+Lambda_j + sum of the first i
/// entries of pattern row j; image boundary is Lambda (+) lambda -> Lambda+a.
Hive gt_to_hive(const GTPattern& g, const GapTuple& gaps);

/// Exact left inverse of gt_to_hive. Throws if the hive's first edge does not
/// carry the partial sums of `gaps` within tol.
GTPattern hive_to_gt(const Hive& h, const GapTuple& gaps, double tol = -1.0);

/// Direct nested quadrature of the interlacing polytope volume, n in {2,3};
/// oracle for the ratio of pairwise-difference products.
double gt_volume_exact(const SpecTuple& lambda);

// Flat text format: header "n=<n> kind=<hive|gt>", then one line per row,
// space-separated values at 17 significant digits.
std::string to_text(const Hive& h);
std::string to_text(const GTPattern& g);
Hive hive_from_text(const std::string& text);
GTPattern gt_from_text(const std::string& text);

}  // namespace hivelab::hive
