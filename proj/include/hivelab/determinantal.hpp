#pragma once

#include <cstdint>
#include <vector>

#include "hivelab/spectra.hpp"

namespace hivelab::det {

using spectra::SpecTuple;

/// Barycentric interpolant of the step data Q_j(lambda_i) = 1_{i<=j} on the
/// strictly decreasing nodes lambda; degree n-1. Condition worsens with n;
/// intended range n <= 64.
class InterpolantQ {
 public:
  InterpolantQ(const SpecTuple& lambda, int level_j);

  double operator()(double x) const;
  double derivative(double x) const;
  int level() const { return j_; }
  const std::vector<double>& barycentric_weights() const { return w_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> w_;  // 1 / prod_{l != i} (lambda_i - lambda_l)
  int j_;                  // values are 1 on the first j nodes
};

double q_eval(const SpecTuple& lambda, int j, double x);

/// Mean of the i-th minor gap for a fixed spectrum: the integral of Q_i over
/// [lambda_{i+1}, lambda_i], by Gauss-Legendre of exactness-sufficient order.
double expected_gap(const SpecTuple& lambda, int i);

/// Product formula for the gap covariance, 1 <= i < j <= n-1.
double gap_covariance(const SpecTuple& lambda, int i, int j);

/// Projection kernel K(x,y) = sum_j 1_{I_j}(x) Q_j'(y).
double kernel_eval(const SpecTuple& lambda, double x, double y);

struct GapMoments {
  int n = 0;
  long long trials = 0;
  std::vector<double> mean;     // size n-1
  std::vector<double> mean_se;  // jackknife standard errors
  std::vector<double> cov;      // (n-1)x(n-1) row-major
  std::vector<double> cov_se;
  double covariance(int i, int j) const { return cov[(i - 1) * (n - 1) + (j - 1)]; }
  double covariance_se(int i, int j) const {
    return cov_se[(i - 1) * (n - 1) + (j - 1)];
  }
};

/// Monte Carlo oracle: samples the fixed-spectrum conjugation ensemble,
/// takes the top-(n-1) minor spectrum, and accumulates gap moments with
/// delete-one jackknife errors. Deterministic in (seed); trials run in
/// parallel on per-trial streams.
GapMoments mc_gap_moments(const SpecTuple& lambda, long long trials,
                          std::uint64_t seed, int workers = -1);

/// Gauss-Legendre rule on [-1,1]; nodes ascending.
void gauss_legendre(int m, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace hivelab::det
