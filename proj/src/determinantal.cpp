#include "hivelab/determinantal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hivelab/parallel.hpp"
#include "hivelab/rmt.hpp"

namespace hivelab::det {

InterpolantQ::InterpolantQ(const SpecTuple& lambda, int level_j)
    : nodes_(lambda.entries()), j_(level_j) {
  const int n = static_cast<int>(nodes_.size());
  if (j_ < 0 || j_ > n) throw std::invalid_argument("InterpolantQ: bad level");
  if (!lambda.strictly_decreasing())
    throw std::invalid_argument("InterpolantQ: duplicate nodes");
  w_.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != i) p *= nodes_[i] - nodes_[l];
    w_[i] = 1.0 / p;
  }
}

double InterpolantQ::operator()(double x) const {
  const int n = static_cast<int>(nodes_.size());
  // Exact at the nodes, second barycentric form elsewhere.
  for (int i = 0; i < n; ++i)
    if (x == nodes_[i]) return i < j_ ? 1.0 : 0.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = w_[i] / (x - nodes_[i]);
    den += t;
    if (i < j_) num += t;
  }
  return num / den;
}

double InterpolantQ::derivative(double x) const {
  const int n = static_cast<int>(nodes_.size());
  for (int k = 0; k < n; ++k) {
    if (x != nodes_[k]) continue;
    // p'(x_k) = sum_{i != k} (w_i/w_k) (f_i - f_k) / (x_k - x_i)
    const double fk = k < j_ ? 1.0 : 0.0;
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double fi = i < j_ ? 1.0 : 0.0;
      d += (w_[i] / w_[k]) * (fi - fk) / (nodes_[k] - nodes_[i]);
    }
    return d;
  }
  double num = 0.0, den = 0.0, dnum = 0.0, dden = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = 1.0 / (x - nodes_[i]);
    const double t = w_[i] * r;
    den += t;
    dden -= t * r;
    if (i < j_) {
      num += t;
      dnum -= t * r;
    }
  }
  return (dnum * den - num * dden) / (den * den);
}

double q_eval(const SpecTuple& lambda, int j, double x) {
  return InterpolantQ(lambda, j)(x);
}

void gauss_legendre(int m, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m must be >= 1");
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int k = 0; k < (m + 1) / 2; ++k) {
    // Newton from the Chebyshev-angle initial guess.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= m; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[k] = -x;
    nodes[m - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[k] = w;
    weights[m - 1 - k] = w;
  }
}

namespace {

double integrate_interpolant(const InterpolantQ& q, double lo, double hi,
                             int degree) {
  // m-node Gauss-Legendre is exact through degree 2m-1.
  const int m = degree / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(m, x, w);
  const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
  double acc = 0.0;
  for (int k = 0; k < m; ++k) acc += w[k] * q(c + h * x[k]);
  return acc * h;
}

}  // namespace

double expected_gap(const SpecTuple& lambda, int i) {
  const int n = static_cast<int>(lambda.size());
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("expected_gap: need 1 <= i <= n-1");
  const InterpolantQ q(lambda, i);
  return integrate_interpolant(q, lambda[i], lambda[i - 1], n - 1);
}

double gap_covariance(const SpecTuple& lambda, int i, int j) {
  const int n = static_cast<int>(lambda.size());
  if (!(1 <= i && i < j && j <= n - 1))
    throw std::invalid_argument("gap_covariance: need 1 <= i < j <= n-1");
  const InterpolantQ qi(lambda, i);
  const InterpolantQ qj(lambda, j);
  const double int_qi_over_ij = integrate_interpolant(qi, lambda[j], lambda[j - 1], n - 1);
  const double int_qj_over_ii = integrate_interpolant(qj, lambda[i], lambda[i - 1], n - 1);
  const double len_ii = lambda[i - 1] - lambda[i];
  return (len_ii - int_qj_over_ii) * int_qi_over_ij;
}

double kernel_eval(const SpecTuple& lambda, double x, double y) {
  const int n = static_cast<int>(lambda.size());
  for (int j = 1; j <= n - 1; ++j) {
    if (x >= lambda[j] && x <= lambda[j - 1])
      return InterpolantQ(lambda, j).derivative(y);
  }
  return 0.0;
}

GapMoments mc_gap_moments(const SpecTuple& lambda, long long trials,
                          std::uint64_t seed, int workers) {
  const int n = static_cast<int>(lambda.size());
  if (n < 2) throw std::invalid_argument("mc_gap_moments: need n >= 2");
  if (trials < 2) throw std::invalid_argument("mc_gap_moments: need >= 2 trials");
  const int m = n - 1;

  std::vector<double> gaps(static_cast<std::size_t>(trials) * m);
  parallel_for(
      trials,
      [&](long long t) {
        rmt::RngStream rng(seed, static_cast<std::uint64_t>(t));
        const rmt::HermitianMatrix a = rmt::haar_isospectral(lambda, rng);
        const rmt::EighResult r = rmt::eigh(a.leading_minor(m));
        for (int i = 0; i < m; ++i)
          gaps[static_cast<std::size_t>(t) * m + i] = lambda[i] - r.values[i];
      },
      workers);

  GapMoments out;
  out.n = n;
  out.trials = trials;
  out.mean.assign(m, 0.0);
  out.mean_se.assign(m, 0.0);
  out.cov.assign(static_cast<std::size_t>(m) * m, 0.0);
  out.cov_se.assign(static_cast<std::size_t>(m) * m, 0.0);

  const double N = static_cast<double>(trials);
  std::vector<double> sum(m, 0.0);
  std::vector<double> sum_xy(static_cast<std::size_t>(m) * m, 0.0);
  for (long long t = 0; t < trials; ++t) {
    const double* g = &gaps[static_cast<std::size_t>(t) * m];
    for (int i = 0; i < m; ++i) {
      sum[i] += g[i];
      for (int j = 0; j < m; ++j) sum_xy[i * m + j] += g[i] * g[j];
    }
  }
  for (int i = 0; i < m; ++i) out.mean[i] = sum[i] / N;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.cov[i * m + j] =
          (sum_xy[i * m + j] - sum[i] * sum[j] / N) / (N - 1.0);

  // Delete-one jackknife from the running sums: SE^2 = (N-1)/N * sum of
  // squared deviations of the replicates about their own average.
  std::vector<double> rep1(m, 0.0), rep2(m, 0.0);
  std::vector<double> cov1(static_cast<std::size_t>(m) * m, 0.0),
      cov2(static_cast<std::size_t>(m) * m, 0.0);
  for (long long t = 0; t < trials; ++t) {
    const double* g = &gaps[static_cast<std::size_t>(t) * m];
    for (int i = 0; i < m; ++i) {
      const double mean_wo = (sum[i] - g[i]) / (N - 1.0);
      rep1[i] += mean_wo;
      rep2[i] += mean_wo * mean_wo;
      for (int j = 0; j < m; ++j) {
        const double sum_j = sum[j] - g[j];
        const double sxy = sum_xy[i * m + j] - g[i] * g[j];
        const double cov_wo =
            (sxy - (sum[i] - g[i]) * sum_j / (N - 1.0)) / (N - 2.0);
        cov1[i * m + j] += cov_wo;
        cov2[i * m + j] += cov_wo * cov_wo;
      }
    }
  }
  const double jk = (N - 1.0) / N;
  for (int i = 0; i < m; ++i)
    out.mean_se[i] = std::sqrt(std::max(0.0, jk * (rep2[i] - rep1[i] * rep1[i] / N)));
  for (std::size_t k = 0; k < cov1.size(); ++k)
    out.cov_se[k] = std::sqrt(std::max(0.0, jk * (cov2[k] - cov1[k] * cov1[k] / N)));
  return out;
}

}  // namespace hivelab::det
