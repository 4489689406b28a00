#include "hivelab/hive_gt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hivelab::hive {

Hive::Hive(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Hive: n must be >= 1");
  values_.assign(static_cast<std::size_t>(n + 1) * (n + 2) / 2, 0.0);
}

std::size_t Hive::index(int i, int j) const {
  if (i < 0 || j < i || j > n_) throw std::out_of_range("Hive: (i,j) not in triangle");
  return static_cast<std::size_t>(j) * (j + 1) / 2 + i;
}

double Hive::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GTPattern::GTPattern(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("GTPattern: n must be >= 1");
  values_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

std::size_t GTPattern::index(int j, int k) const {
  if (k < 1 || k > n_ || j < 1 || j > k)
    throw std::out_of_range("GTPattern: (j,k) not in triangle");
  return static_cast<std::size_t>(k) * (k - 1) / 2 + j - 1;
}

std::vector<double> GTPattern::row(int k) const {
  std::vector<double> r(k);
  for (int j = 1; j <= k; ++j) r[j - 1] = at(j, k);
  return r;
}

SpecTuple GTPattern::top_row() const {
  // Eigensolver output can carry ulp-level ordering noise; admit it.
  return SpecTuple(row(n_), default_tol(max_abs()));
}

double GTPattern::row_sum(int k) const {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += at(j, k);
  return s;
}

double GTPattern::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GTPattern::interlacing_violation() const {
  double worst = 0.0;
  for (int k = 1; k <= n_ - 1; ++k) {
    for (int j = 1; j <= k; ++j) {
      worst = std::max(worst, at(j, k) - at(j, k + 1));
      worst = std::max(worst, at(j + 1, k + 1) - at(j, k));
    }
  }
  return worst;
}

bool GTPattern::interlacing(double tol) const {
  if (tol < 0.0) tol = default_tol(max_abs());
  return interlacing_violation() <= tol;
}

void validate_augmented(const AugmentedHive& ah, double tol) {
  const int n = ah.h.n();
  if (ah.pattern.n() != n)
    throw std::invalid_argument("AugmentedHive: size mismatch");
  if (tol < 0.0) tol = default_tol(ah.h.max_abs());
  for (int j = 1; j <= n; ++j) {
    const double inc = ah.h.at(j, j) - ah.h.at(j - 1, j - 1);
    if (std::abs(ah.pattern.at(j, n) - inc) > tol)
      throw std::invalid_argument(
          "AugmentedHive: pattern top row does not match the nu-boundary");
  }
}

std::vector<RhombusViolation> check_rhombus_concave(const Hive& h, double tol) {
  std::vector<RhombusViolation> out;
  const int n = h.n();
  auto in_t = [n](int i, int j) { return 0 <= i && i <= j && j <= n; };
  // The three unit-rhombus templates as (A,B,C,D) offsets from the anchor.
  struct Tmpl {
    int type;
    std::array<std::array<int, 2>, 4> d;
  };
  static const Tmpl kTemplates[3] = {
      {1, {{{0, 0}, {1, 0}, {2, 1}, {1, 1}}}},
      {2, {{{0, 0}, {1, 1}, {1, 2}, {0, 1}}}},
      {3, {{{0, 0}, {0, -1}, {1, -1}, {1, 0}}}},
  };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= j; ++i) {
      for (const Tmpl& t : kTemplates) {
        bool ok = true;
        for (const auto& d : t.d)
          if (!in_t(i + d[0], j + d[1])) { ok = false; break; }
        if (!ok) continue;
        const double excess = h.at(i + t.d[0][0], j + t.d[0][1]) +
                              h.at(i + t.d[2][0], j + t.d[2][1]) -
                              h.at(i + t.d[1][0], j + t.d[1][1]) -
                              h.at(i + t.d[3][0], j + t.d[3][1]);
        if (excess > tol) out.push_back({t.type, i, j, excess});
      }
    }
  }
  return out;
}

namespace {

SpecTuple increments(const std::vector<double>& partials, double tol,
                     const char* what) {
  std::vector<double> inc(partials.size() - 1);
  for (std::size_t k = 0; k + 1 < partials.size(); ++k)
    inc[k] = partials[k + 1] - partials[k];
  for (std::size_t k = 0; k + 1 < inc.size(); ++k) {
    if (inc[k] < inc[k + 1] - tol) {
      throw std::invalid_argument(std::string("hive_boundary: ") + what +
                                  " edge increments are not non-increasing");
    }
  }
  return SpecTuple(std::move(inc), tol);
}

}  // namespace

HiveBoundary hive_boundary(const Hive& h, double tol) {
  const int n = h.n();
  if (tol < 0.0) tol = default_tol(h.max_abs());
  std::vector<double> pl(n + 1), pm(n + 1), pn(n + 1);
  for (int i = 0; i <= n; ++i) {
    pl[i] = h.at(0, i);
    pm[i] = h.at(i, n);
    pn[i] = h.at(i, i);
  }
  return HiveBoundary{increments(pl, tol, "lambda"), increments(pm, tol, "mu"),
                      increments(pn, tol, "nu")};
}

GTBoundary gt_boundary(const GTPattern& g) {
  const int n = g.n();
  std::vector<double> a(n);
  double prev = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double s = g.row_sum(k);
    a[k - 1] = s - prev;
    prev = s;
  }
  return GTBoundary{g.top_row(), std::move(a)};
}

GapTuple::GapTuple(SpecTuple entries, double spread_bound)
    : entries_(std::move(entries)), spread_bound_(spread_bound) {
  if (entries_.size() >= 2 && !(min_gap() > spread_bound))
    throw std::invalid_argument(
        "GapTuple: minimum gap does not exceed the spread bound");
}

double GapTuple::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
    g = std::min(g, entries_[i] - entries_[i + 1]);
  return g;
}

GapTuple GapTuple::arithmetic(int n, double gap_constant, double spread_bound) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = gap_constant * (n - 1 - i);
  return GapTuple(SpecTuple(std::move(v)), spread_bound);
}

Hive gt_to_hive(const GTPattern& g, const GapTuple& gaps) {
  const int n = g.n();
  if (static_cast<int>(gaps.entries().size()) != n)
    throw std::invalid_argument("gt_to_hive: gap tuple length mismatch");
  const double spread = g.top_row().spread();
  if (n >= 2 && !(gaps.min_gap() > spread))
    throw std::invalid_argument(
        "gt_to_hive: gap tuple too narrow for the pattern's top-row spread");

  Hive h(n);
  std::vector<double> gpart(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) gpart[j] = gpart[j - 1] + gaps.entries()[j - 1];
  for (int j = 0; j <= n; ++j) {
    double acc = gpart[j];
    h.at(0, j) = acc;
    for (int i = 1; i <= j; ++i) {
      acc += g.at(i, j);
      h.at(i, j) = acc;
    }
  }
  return h;
}

GTPattern hive_to_gt(const Hive& h, const GapTuple& gaps, double tol) {
  const int n = h.n();
  if (static_cast<int>(gaps.entries().size()) != n)
    throw std::invalid_argument("hive_to_gt: gap tuple length mismatch");
  if (tol < 0.0) tol = default_tol(h.max_abs());
  double gpart = 0.0;
  for (int j = 0; j <= n; ++j) {
    if (std::abs(h.at(0, j) - gpart) > tol)
      throw std::invalid_argument(
          "hive_to_gt: first edge does not carry the gap-tuple partial sums");
    if (j < n) gpart += gaps.entries()[j];
  }
  GTPattern g(n);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= k; ++j) g.at(j, k) = h.at(j, k) - h.at(j - 1, k);
  return g;
}

namespace {

// Nodes/weights for 8-point Gauss-Legendre on [-1,1]; exact through degree 15,
// far beyond the linear integrand below.
constexpr int kGL = 8;
constexpr double kGLx[kGL] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
constexpr double kGLw[kGL] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

}  // namespace

double gt_volume_exact(const SpecTuple& lambda) {
  if (!lambda.strictly_decreasing())
    throw std::invalid_argument("gt_volume_exact: need a strict spectrum");
  const std::size_t n = lambda.size();
  if (n == 2) return lambda[0] - lambda[1];
  if (n != 3)
    throw std::invalid_argument("gt_volume_exact: only n in {2,3} supported");
  // Integrate the length of the inner interlacing interval [b,a] over the
  // middle-row box [l2,l1] x [l3,l2].
  const double a0 = lambda[1], a1 = lambda[0];
  const double b0 = lambda[2], b1 = lambda[1];
  const double ha = 0.5 * (a1 - a0), ca = 0.5 * (a1 + a0);
  const double hb = 0.5 * (b1 - b0), cb = 0.5 * (b1 + b0);
  double vol = 0.0;
  for (int p = 0; p < kGL; ++p) {
    const double a = ca + ha * kGLx[p];
    for (int q = 0; q < kGL; ++q) {
      const double b = cb + hb * kGLx[q];
      vol += kGLw[p] * kGLw[q] * (a - b);
    }
  }
  return vol * ha * hb;
}

namespace {

std::string format_rows(int n, const char* kind,
                        const std::vector<std::vector<double>>& rows) {
  std::string out = "n=" + std::to_string(n) + " kind=" + kind + "\n";
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
      out += (i + 1 < row.size()) ? ' ' : '\n';
    }
  }
  return out;
}

struct ParsedText {
  int n;
  std::string kind;
  std::vector<std::vector<double>> rows;
};

ParsedText parse_rows(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty input");
  ParsedText pt;
  const auto npos = header.find("n=");
  const auto kpos = header.find("kind=");
  if (npos == std::string::npos || kpos == std::string::npos)
    throw std::invalid_argument("bad header, expected 'n=<n> kind=<kind>'");
  pt.n = std::stoi(header.substr(npos + 2));
  pt.kind = header.substr(kpos + 5);
  while (!pt.kind.empty() && std::isspace(static_cast<unsigned char>(pt.kind.back())))
    pt.kind.pop_back();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) pt.rows.push_back(std::move(row));
  }
  return pt;
}

}  // namespace

std::string to_text(const Hive& h) {
  std::vector<std::vector<double>> rows;
  for (int j = 0; j <= h.n(); ++j) {
    std::vector<double> row(j + 1);
    for (int i = 0; i <= j; ++i) row[i] = h.at(i, j);
    rows.push_back(std::move(row));
  }
  return format_rows(h.n(), "hive", rows);
}

std::string to_text(const GTPattern& g) {
  std::vector<std::vector<double>> rows;
  for (int k = 1; k <= g.n(); ++k) rows.push_back(g.row(k));
  return format_rows(g.n(), "gt", rows);
}

Hive hive_from_text(const std::string& text) {
  const ParsedText pt = parse_rows(text);
  if (pt.kind != "hive") throw std::invalid_argument("expected kind=hive");
  if (static_cast<int>(pt.rows.size()) != pt.n + 1)
    throw std::invalid_argument("hive text: wrong row count");
  Hive h(pt.n);
  for (int j = 0; j <= pt.n; ++j) {
    if (static_cast<int>(pt.rows[j].size()) != j + 1)
      throw std::invalid_argument("hive text: wrong row length");
    for (int i = 0; i <= j; ++i) h.at(i, j) = pt.rows[j][i];
  }
  return h;
}

GTPattern gt_from_text(const std::string& text) {
  const ParsedText pt = parse_rows(text);
  if (pt.kind != "gt") throw std::invalid_argument("expected kind=gt");
  if (static_cast<int>(pt.rows.size()) != pt.n)
    throw std::invalid_argument("gt text: wrong row count");
  GTPattern g(pt.n);
  for (int k = 1; k <= pt.n; ++k) {
    if (static_cast<int>(pt.rows[k - 1].size()) != k)
      throw std::invalid_argument("gt text: wrong row length");
    for (int j = 1; j <= k; ++j) g.at(j, k) = pt.rows[k - 1][j - 1];
  }
  return g;
}

}  // namespace hivelab::hive
