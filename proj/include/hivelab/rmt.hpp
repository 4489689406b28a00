#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hivelab/hive_gt.hpp"
#include "hivelab/rng.hpp"
#include "hivelab/spectra.hpp"

namespace hivelab::rmt {

using spectra::SpecTuple;

/// Hermitian matrix holding only the upper triangle, so the symmetry is exact
/// by construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);

  int n() const { return n_; }
  std::complex<double> at(int i, int j) const;
  /// Stores into the upper triangle; (i,j) with i > j sets the conjugate.
  void set(int i, int j, std::complex<double> v);

  Eigen::MatrixXcd dense() const;
  static HermitianMatrix from_dense(const Eigen::MatrixXcd& m,
                                    double hermiticity_tol = 1e-12);

  HermitianMatrix leading_minor(int k) const;
  std::vector<double> diagonal() const;
  double max_abs() const;

 private:
  std::size_t index(int i, int j) const;  // requires i <= j
  int n_;
  std::vector<std::complex<double>> upper_;
};

struct EighResult {
  SpecTuple values;          // non-increasing
  Eigen::MatrixXcd vectors;  // columns in the same order
  int sweeps = 0;
};

/// Optional external eigensolver; return nullopt to fall back to the built-in
/// Jacobi solver. Not synchronized: install once before concurrent use.
using EighHook = std::function<std::optional<EighResult>(const HermitianMatrix&)>;
void set_eigensolver_hook(EighHook hook);

/// Cyclic Jacobi with phase reduction; rotation threshold 1e-14 relative to
/// the largest input magnitude, at most 40 sweeps. Deterministic.
EighResult eigh(const HermitianMatrix& m);

/// A = sigma*sqrt(n) * M where M has independent mean-zero entries: real
/// variance-1 gaussians on the diagonal, complex variance-1 gaussians above.
HermitianMatrix sample_gue(int n, double sigma, RngStream& rng);

/// Row k of the result is the spectrum of the leading k x k minor.
hive::GTPattern minor_process(const HermitianMatrix& a);

Eigen::MatrixXcd haar_unitary(int n, RngStream& rng);

/// U diag(lambda) U* with U Haar-distributed.
HermitianMatrix haar_isospectral(const SpecTuple& lambda, RngStream& rng);

struct RigidityRow {
  int i = 0;  // 1-based
  double gamma_i = 0.0;
  double max_norm_dev = 0.0;
  bool flag = false;
};

/// Per-index empirical maxima of |lambda_i - sigma*sqrt(n)*gamma_i| *
/// min(i, n-i+1)^{1/3} / (n^{1/3} log^2 n), flagged above `flag_constant`.
/// The log exponent is a diagnostic choice, adjustable via `log_exponent`.
std::vector<RigidityRow> rigidity_report(const std::vector<SpecTuple>& samples,
                                         double sigma,
                                         double flag_constant = 10.0,
                                         double log_exponent = 2.0);

}  // namespace hivelab::rmt
