#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "hivelab/spectra.hpp"

using namespace hivelab::spectra;

TEST_CASE("vandermonde basic values") {
  CHECK(vandermonde(SpecTuple({5.0})) == 1.0);
  CHECK(vandermonde(SpecTuple({2.0, 1.0, 0.0})) == 2.0);
  CHECK(vandermonde(SpecTuple({3.7, 3.7})) == 0.0);
}

TEST_CASE("vandermonde of the staircase is the superfactorial") {
  for (int n = 1; n <= 8; ++n) {
    // Exact integer oracle: product of k! for k < n.
    std::int64_t sf = 1, fact = 1;
    for (int k = 1; k < n; ++k) {
      fact *= k;
      sf *= fact;
    }
    CHECK(vandermonde(SpecTuple::staircase(n)) == static_cast<double>(sf));
  }
}

TEST_CASE("vandermonde log form agrees with long-double accumulation") {
  const int n = 31;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 0.09 * (n - i);
  const SpecTuple t(x);

  long double log_acc = 0.0L;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) log_acc += std::log((long double)(x[i] - x[j]));

  const SignedLog sl = vandermonde_log(t);
  CHECK(sl.sign == 1.0);
  CHECK(std::abs(sl.log_abs - static_cast<double>(log_acc)) < 1e-9);
  // n > 30 path routes through the log form.
  const double direct = std::exp(static_cast<double>(log_acc));
  CHECK(vandermonde(t) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("semicircle quantile endpoints and symmetry") {
  CHECK(semicircle_quantile(2, 2) == 2.0);
  CHECK(std::abs(semicircle_quantile(4, 2)) < 1e-12);
  for (int i = 1; i < 10; ++i) {
    CHECK(semicircle_quantile(10, i) < semicircle_quantile(10, i + 1));
    if (10 - i >= 1)
      CHECK(std::abs(semicircle_quantile(10, i) + semicircle_quantile(10, 10 - i)) <
            1e-10);
  }
}

TEST_CASE("semicircle quantile matches an independent quadrature oracle") {
  // Oracle: Simpson CDF + bisection, sharing no code with the library path.
  auto density = [](double x) {
    return std::sqrt(std::max(0.0, 4.0 - x * x)) / (2.0 * std::acos(-1.0));
  };
  auto cdf = [&](double x) {
    const int steps = 20000;
    const double h = (x + 2.0) / steps;
    double acc = density(-2.0) + density(x);
    for (int k = 1; k < steps; ++k)
      acc += density(-2.0 + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  auto quantile = [&](double p) {
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(semicircle_quantile(4, 1) == doctest::Approx(quantile(0.25)).epsilon(1e-8));
  CHECK(semicircle_quantile(7, 3) == doctest::Approx(quantile(3.0 / 7.0)).epsilon(1e-8));
}

TEST_CASE("weyl and trace necessary conditions") {
  const SpecTuple lam({5, 3}), mu({3, 0});
  CHECK(weyl_trace_check(lam, mu, SpecTuple({6, 5})).pass());
  CHECK(weyl_trace_check(lam, mu, SpecTuple({8, 3})).pass());
  const WeylTraceReport bad = weyl_trace_check(lam, mu, SpecTuple({9, 2}));
  CHECK(!bad.pass());
  CHECK(bad.trace_ok);  // 9+2 == 11
  CHECK(!bad.weyl_ok);
  CHECK(bad.worst_i == 1);
  CHECK(bad.worst_j == 1);
  CHECK(bad.worst_weyl_excess == doctest::Approx(1.0));
  CHECK_THROWS(weyl_trace_check(lam, mu, SpecTuple({1.0, 0.0, -1.0})));
}

TEST_CASE("majorization against the permutahedron") {
  const SpecTuple lam({1.0, 0.0});
  CHECK(majorization_check(lam, {0.0, 1.0}));
  CHECK(majorization_check(lam, {0.5, 0.5}));
  CHECK(!majorization_check(lam, {2.0, -1.0}));
  CHECK_THROWS(majorization_check(lam, {1.0}));
}

TEST_CASE("majorization is invariant under permutations of a") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> lam(5), a(5);
    for (auto& v : lam) v = u(rng);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    for (auto& v : a) v = u(rng);
    const SpecTuple t(lam);
    const bool base = majorization_check(t, a);
    for (int s = 0; s < 5; ++s) {
      std::shuffle(a.begin(), a.end(), rng);
      CHECK(majorization_check(t, a) == base);
    }
  }
}
