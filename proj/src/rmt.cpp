#include "hivelab/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hivelab::rmt {

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("HermitianMatrix: n must be >= 1");
  upper_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, {0.0, 0.0});
}

std::size_t HermitianMatrix::index(int i, int j) const {
  // Row-major upper triangle: row i starts after i full rows.
  return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
         (j - i);
}

std::complex<double> HermitianMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("HermitianMatrix: index out of range");
  if (i <= j) return upper_[index(i, j)];
  return std::conj(upper_[index(j, i)]);
}

void HermitianMatrix::set(int i, int j, std::complex<double> v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("HermitianMatrix: index out of range");
  if (i == j) v.imag(0.0);
  if (i <= j)
    upper_[index(i, j)] = v;
  else
    upper_[index(j, i)] = std::conj(v);
}

Eigen::MatrixXcd HermitianMatrix::dense() const {
  Eigen::MatrixXcd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = at(i, j);
  return m;
}

HermitianMatrix HermitianMatrix::from_dense(const Eigen::MatrixXcd& m,
                                            double hermiticity_tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("from_dense: matrix not square");
  const int n = static_cast<int>(m.rows());
  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::complex<double> avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      if (std::abs(m(i, j) - std::conj(m(j, i))) >
          hermiticity_tol * (1.0 + std::abs(avg)))
        throw std::invalid_argument("from_dense: matrix not Hermitian");
      h.set(i, j, avg);
    }
  }
  return h;
}

HermitianMatrix HermitianMatrix::leading_minor(int k) const {
  if (k < 1 || k > n_) throw std::invalid_argument("leading_minor: bad order");
  HermitianMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) m.set(i, j, at(i, j));
  return m;
}

std::vector<double> HermitianMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = at(i, i).real();
  return d;
}

double HermitianMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : upper_) m = std::max(m, std::abs(v));
  return m;
}

namespace {
EighHook g_eigh_hook;
}

void set_eigensolver_hook(EighHook hook) { g_eigh_hook = std::move(hook); }

EighResult eigh(const HermitianMatrix& m) {
  if (g_eigh_hook) {
    if (auto r = g_eigh_hook(m)) return *r;
  }

  const int n = m.n();
  Eigen::MatrixXcd a = m.dense();
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  const double scale = std::max(m.max_abs(), 1e-300);
  const double thresh = 1e-14 * scale;
  constexpr int kMaxSweeps = 40;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const std::complex<double> g = a(p, q);
        const double ag = std::abs(g);
        if (ag <= thresh) continue;
        rotated = true;

        // Phase step: scale column q by conj(u) so the pivot becomes real,
        // then a real Givens rotation annihilates it.
        const std::complex<double> u = g / ag;
        const std::complex<double> uc = std::conj(u);
        a.col(q) *= uc;
        a.row(q) *= u;
        v.col(q) *= uc;

        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * ag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const std::complex<double> akp = a(k, p);
          const std::complex<double> akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const std::complex<double> apk = a(p, k);
          const std::complex<double> aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p).imag(0.0);
        a(q, q).imag(0.0);
        for (int k = 0; k < n; ++k) {
          const std::complex<double> vkp = v(k, p);
          const std::complex<double> vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    throw std::runtime_error(
        "eigh: Jacobi did not converge in 40 sweeps (max off-diagonal " +
        std::to_string(off) + ")");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](int i, int j) {
    return a(i, i).real() > a(j, j).real();
  });

  std::vector<double> vals(n);
  Eigen::MatrixXcd vecs(n, n);
  for (int k = 0; k < n; ++k) {
    vals[k] = a(order[k], order[k]).real();
    vecs.col(k) = v.col(order[k]);
  }
  return EighResult{SpecTuple(std::move(vals)), std::move(vecs), sweep + 1};
}

HermitianMatrix sample_gue(int n, double sigma, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_gue: sigma must be > 0");
  const double scale = sigma * std::sqrt(static_cast<double>(n));
  const double off = scale / std::sqrt(2.0);  // complex variance 1 per entry
  HermitianMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, scale * rng.normal());
    for (int j = i + 1; j < n; ++j)
      m.set(i, j, std::complex<double>(off * rng.normal(), off * rng.normal()));
  }
  return m;
}

hive::GTPattern minor_process(const HermitianMatrix& a) {
  const int n = a.n();
  hive::GTPattern g(n);
  for (int k = 1; k <= n; ++k) {
    const EighResult r = eigh(a.leading_minor(k));
    for (int j = 1; j <= k; ++j) g.at(j, k) = r.values[j - 1];
  }
  return g;
}

Eigen::MatrixXcd haar_unitary(int n, RngStream& rng) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z(i, j) = std::complex<double>(rng.normal(), rng.normal()) * inv_sqrt2;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: normalize R's diagonal to positive reals.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double ad = std::abs(d);
    q.col(j) *= (ad > 0.0) ? d / ad : 1.0;
  }
  return q;
}

HermitianMatrix haar_isospectral(const SpecTuple& lambda, RngStream& rng) {
  const int n = static_cast<int>(lambda.size());
  const Eigen::MatrixXcd u = haar_unitary(n, rng);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = lambda[i];
  const Eigen::MatrixXcd a = u * d.asDiagonal() * u.adjoint();
  // Conjugation is Hermitian up to rounding; symmetrize exactly.
  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h.set(i, j, 0.5 * (a(i, j) + std::conj(a(j, i))));
  return h;
}

std::vector<RigidityRow> rigidity_report(const std::vector<SpecTuple>& samples,
                                         double sigma, double flag_constant,
                                         double log_exponent) {
  if (samples.empty()) throw std::invalid_argument("rigidity_report: no samples");
  const int n = static_cast<int>(samples.front().size());
  for (const auto& s : samples)
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("rigidity_report: sample size mismatch");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double denom = std::cbrt(static_cast<double>(n)) *
                       std::pow(std::log(static_cast<double>(n)), log_exponent);
  std::vector<RigidityRow> rows(n);
  for (int i = 1; i <= n; ++i) {
    const double gamma_i = spectra::semicircle_quantile(n, i);
    const double weight = std::cbrt(static_cast<double>(std::min(i, n - i + 1)));
    double worst = 0.0;
    for (const auto& s : samples)
      worst = std::max(worst, std::abs(s[i - 1] - sigma * sqrt_n * gamma_i));
    rows[i - 1] = RigidityRow{i, gamma_i, worst * weight / denom,
                              worst * weight / denom > flag_constant};
  }
  return rows;
}

}  // namespace hivelab::rmt
