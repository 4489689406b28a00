#include "hivelab/octahedron.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>

namespace hivelab::oct {

SquareFunction::SquareFunction(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("SquareFunction: n must be >= 1");
  v_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
}

double SquareFunction::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

double pair_tol(double tol, double scale_a, double scale_b) {
  if (tol >= 0.0) return tol;
  return hive::default_tol(std::max(scale_a, scale_b));
}

}  // namespace

SquareFunction pack_upper(const Hive& h, const Hive& h_prime, double gamma_sum,
                          double tol) {
  const int n = h.n();
  if (h_prime.n() != n) throw std::invalid_argument("pack_upper: size mismatch");
  tol = pair_tol(tol, h.max_abs(), h_prime.max_abs());
  SquareFunction out(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i <= j)
        out.at(i, j) = h.at(i, j);
      else
        out.at(i, j) = h_prime.at(j, n - i + j) - gamma_sum;
    }
  }
  for (int i = 0; i <= n; ++i) {
    const double other = h_prime.at(i, n) - gamma_sum;
    if (std::abs(h.at(i, i) - other) > tol)
      throw std::invalid_argument("pack_upper: diagonal mismatch beyond tol");
  }
  return out;
}

SquareFunction pack_lower(const Hive& k, const Hive& k_prime, double gamma_sum,
                          double tol) {
  const int n = k.n();
  if (k_prime.n() != n) throw std::invalid_argument("pack_lower: size mismatch");
  tol = pair_tol(tol, k.max_abs(), k_prime.max_abs());
  SquareFunction out(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i + j >= n)
        out.at(i, j) = k.at(i + j - n, j) - gamma_sum;
      else
        out.at(i, j) = k_prime.at(j, n - i) - gamma_sum;
    }
  }
  for (int j = 0; j <= n; ++j) {
    if (std::abs(k.at(0, j) - k_prime.at(j, j)) > tol)
      throw std::invalid_argument("pack_lower: antidiagonal mismatch beyond tol");
  }
  return out;
}

std::pair<Hive, Hive> unpack_upper(const SquareFunction& h_tilde,
                                   double gamma_sum) {
  const int n = h_tilde.n();
  Hive h(n), h_prime(n);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= j; ++i) {
      h.at(i, j) = h_tilde.at(i, j);
      h_prime.at(i, j) = h_tilde.at(n - j + i, i) + gamma_sum;
    }
  }
  return {std::move(h), std::move(h_prime)};
}

std::pair<Hive, Hive> unpack_lower(const SquareFunction& k_tilde,
                                   double gamma_sum) {
  const int n = k_tilde.n();
  Hive k(n), k_prime(n);
  for (int q = 0; q <= n; ++q) {
    for (int p = 0; p <= q; ++p) {
      k.at(p, q) = k_tilde.at(n - q + p, q) + gamma_sum;
      k_prime.at(p, q) = k_tilde.at(n - q, p) + gamma_sum;
    }
  }
  return {std::move(k), std::move(k_prime)};
}

double default_gap_constant(const GTPattern& g1, const GTPattern& g2) {
  return g1.top_row().spread() + g2.top_row().spread() + 1.0;
}

PackedGTPair gt_pair_to_square(const GTPattern& g1, const GTPattern& g2,
                               double gap_constant) {
  const int n = g1.n();
  if (g2.n() != n)
    throw std::invalid_argument("gt_pair_to_square: pattern size mismatch");
  const hive::GTBoundary b1 = gt_boundary(g1);
  const hive::GTBoundary b2 = gt_boundary(g2);
  const double spread1 = b1.lambda.spread();
  const double spread2 = b2.lambda.spread();
  if (!(gap_constant > spread1 + spread2))
    throw std::invalid_argument(
        "gt_pair_to_square: gap constant must exceed the combined spread");

  const hive::GapTuple gamma =
      hive::GapTuple::arithmetic(n, gap_constant, spread1);
  const Hive k_prime = gt_to_hive(g1, gamma);

  std::vector<double> sigma_entries(n);
  for (int i = 0; i < n; ++i)
    sigma_entries[i] = gamma.entries()[i] + b1.a[i];
  const hive::GapTuple sigma(hive::SpecTuple(std::move(sigma_entries)), spread2);
  const Hive k = gt_to_hive(g2, sigma);

  const double gamma_sum = gamma.entries().sum();
  return PackedGTPair{pack_lower(k, k_prime, gamma_sum), gap_constant,
                      gamma_sum};
}

namespace {

// Dense field on the simplex {x,y,z,w >= 0, x+y+z+w = n}, indexed by (x,y,z)
// with w implicit.
class TetraField {
 public:
  explicit TetraField(int n)
      : n_(n),
        stride_(n + 1),
        o_(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), 0.0) {}

  double& at(int x, int y, int z) {
    return o_[(static_cast<std::size_t>(x) * stride_ + y) * stride_ + z];
  }
  double at(int x, int y, int z) const {
    return o_[(static_cast<std::size_t>(x) * stride_ + y) * stride_ + z];
  }

 private:
  int n_;
  std::size_t stride_;
  std::vector<double> o_;
};

}  // namespace

SquareFunction excavate(const SquareFunction& k_tilde) {
  const int n = k_tilde.n();
  TetraField o(n);

  // Lower faces: z = 0 carries the region above the antidiagonal, w = 0 the
  // region below; they agree on the shared edge x+y = n.
  for (int x = 0; x <= n; ++x) {
    for (int y = 0; y <= n - x; ++y) {
      o.at(x, y, 0) = k_tilde.at(n - y, n - x);
      o.at(x, y, n - x - y) = k_tilde.at(x, y);
    }
  }

  // Fill all points with z,w >= 1 by induction on s = z+w.
  for (int s = 2; s <= n; ++s) {
    for (int z = 1; z <= s - 1; ++z) {
      for (int x = 0; x <= n - s; ++x) {
        const int y = n - s - x;
        const double hi = o.at(x + 1, y, z) + o.at(x, y + 1, z - 1);
        const double lo = o.at(x + 1, y, z - 1) + o.at(x, y + 1, z);
        o.at(x, y, z) = std::max(hi, lo) - o.at(x + 1, y + 1, z - 1);
      }
    }
  }

  SquareFunction h_tilde(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      h_tilde.at(i, j) =
          (i <= j) ? o.at(0, j - i, n - j) : o.at(i - j, 0, n - i);
    }
  }
  return h_tilde;
}

SquareFunction inverse_excavate(const SquareFunction& h_tilde) {
  const int n = h_tilde.n();
  TetraField o(n);

  // Upper faces: x = 0 and y = 0.
  for (int y = 0; y <= n; ++y)
    for (int z = 0; z <= n - y; ++z) o.at(0, y, z) = h_tilde.at(n - y - z, n - z);
  for (int x = 0; x <= n; ++x)
    for (int z = 0; z <= n - x; ++z) o.at(x, 0, z) = h_tilde.at(n - z, n - x - z);

  // Solve the same octahedron relation for its minimal vertex, by induction
  // on t = x+y.
  for (int t = 2; t <= n; ++t) {
    for (int x = 1; x <= t - 1; ++x) {
      const int y = t - x;
      for (int z = 0; z <= n - t; ++z) {
        const double hi = o.at(x, y - 1, z + 1) + o.at(x - 1, y, z);
        const double lo = o.at(x, y - 1, z) + o.at(x - 1, y, z + 1);
        o.at(x, y, z) = std::max(hi, lo) - o.at(x - 1, y - 1, z + 1);
      }
    }
  }

  SquareFunction k_tilde(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      k_tilde.at(i, j) =
          (i + j >= n) ? o.at(n - j, n - i, 0) : o.at(i, j, n - i - j);
    }
  }
  return k_tilde;
}

AugmentedHive unpack_to_augmented(const SquareFunction& h_tilde,
                                  double gamma_sum, double tol) {
  auto [h, h_prime] = unpack_upper(h_tilde, gamma_sum);
  const int n = h.n();
  if (tol < 0.0) tol = hive::default_tol(h_prime.max_abs());

  std::vector<double> gaps(n);
  for (int j = 1; j <= n; ++j) gaps[j - 1] = h_prime.at(0, j) - h_prime.at(0, j - 1);

  const hive::HiveBoundary hb = hive_boundary(h, tol);
  const double nu_spread = hb.nu.spread();
  hive::SpecTuple gap_entries(std::move(gaps), tol);
  const hive::GapTuple gamma(std::move(gap_entries), nu_spread);

  GTPattern pattern = hive_to_gt(h_prime, gamma, tol);
  AugmentedHive out{std::move(h), std::move(pattern)};
  hive::validate_augmented(out, tol);
  return out;
}

std::string to_text(const SquareFunction& s) {
  const int n = s.n();
  std::string out = "n=" + std::to_string(n) + " kind=square\n";
  char buf[32];
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", s.at(i, j));
      out += buf;
      out += (j < n) ? ' ' : '\n';
    }
  }
  return out;
}

SquareFunction square_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("square text: empty input");
  int n = -1;
  if (std::sscanf(header.c_str(), "n=%d kind=square", &n) != 1 || n < 1)
    throw std::invalid_argument("square text: bad header");
  SquareFunction s(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (!(in >> s.at(i, j)))
        throw std::invalid_argument("square text: not enough values");
    }
  }
  return s;
}

int Hexagon::edge_lo() const { return xlo; }
int Hexagon::edge_hi() const { return xhi - 1; }

Hexagon build_hexagon(int n, int vi, int vj) {
  if (vi < 1 || vi > n - 1 || vj < 1 || vj > n - 1)
    throw std::invalid_argument("build_hexagon: v must be interior");
  Hexagon hx;
  hx.n = n;
  hx.vi = vi;
  hx.vj = vj;
  hx.upper_branch = vi <= vj;
  if (hx.upper_branch) {
    hx.vertex = {{{0, n},
                  {0, vj},
                  {vi, vj - vi},
                  {n + vi - vj, vj - vi},
                  {n + vi - vj, vj},
                  {vi, n}}};
    hx.xlo = 0;
    hx.xhi = n + vi - vj;
    hx.ylo = vj - vi;
    hx.yhi = n;
    hx.slo = vj;
    hx.shi = n + vi;
  } else {
    hx.vertex = {{{vi - vj, n + vj - vi},
                  {vi - vj, vj},
                  {vi, 0},
                  {n, 0},
                  {n, vj},
                  {vi, n + vj - vi}}};
    hx.xlo = vi - vj;
    hx.xhi = n;
    hx.ylo = 0;
    hx.yhi = n + vj - vi;
    hx.slo = vi;
    hx.shi = n + vj;
  }
  // v is the crossing of diagonals BE (horizontal) and CF (vertical).
  if (hx.vertex[1][1] != vj || hx.vertex[4][1] != vj || hx.vertex[2][0] != vi ||
      hx.vertex[5][0] != vi)
    throw std::logic_error("build_hexagon: diagonal invariant broken");
  return hx;
}

Color Lozenge::color() const {
  switch (kind) {
    case LozengeKind::type_i:
      return region == Region::upper ? Color::blue : Color::red;
    case LozengeKind::type_ii:
      return region == Region::upper ? Color::red : Color::blue;
    default:
      return Color::green;
  }
}

std::array<std::array<int, 2>, 4> Lozenge::vertices() const {
  switch (kind) {
    case LozengeKind::type_i:
      return {{{ai, aj}, {ai + 1, aj - 1}, {ai + 2, aj - 1}, {ai + 1, aj}}};
    case LozengeKind::type_ii:
      return {{{ai, aj}, {ai, aj + 1}, {ai - 1, aj + 2}, {ai - 1, aj + 1}}};
    default:
      return {{{ai, aj}, {ai + 1, aj}, {ai + 1, aj + 1}, {ai, aj + 1}}};
  }
}

std::array<std::array<int, 2>, 3> BorderTriangle::vertices(int n) const {
  if (upward)
    return {{{edge, n - edge}, {edge + 1, n - edge}, {edge + 1, n - edge - 1}}};
  return {{{edge, n - edge}, {edge, n - edge - 1}, {edge + 1, n - edge - 1}}};
}

namespace {

// Unit triangles of the sheared lattice. up(a,b) = {(a,b),(a+1,b),(a+1,b-1)}
// has two vertices on the diagonal a+b and its apex one level higher;
// dn(a,b) = {(a,b),(a,b-1),(a+1,b-1)} points one level lower.
struct Tri {
  int a, b;
  bool up;
};

class Enumerator {
 public:
  Enumerator(const Hexagon& hex, long long budget,
             const std::function<bool(const LozengeTiling&)>& yield)
      : hex_(hex), budget_(budget), yield_(yield) {
    collect();
  }

  long long run() {
    count_ = 0;
    dfs(0);
    return count_;
  }

 private:
  enum Cover : std::uint8_t { kFree = 0, kLozenge = 1, kStandalone = 2 };

  bool vertex_in(int x, int y) const { return hex_.contains(x, y); }

  bool tri_in(const Tri& t) const {
    if (t.up)
      return vertex_in(t.a, t.b) && vertex_in(t.a + 1, t.b) &&
             vertex_in(t.a + 1, t.b - 1);
    return vertex_in(t.a, t.b) && vertex_in(t.a, t.b - 1) &&
           vertex_in(t.a + 1, t.b - 1);
  }

  int id_of(int a, int b, bool up) const {
    const int w = hex_.xhi - hex_.xlo;  // cells per row
    if (a < hex_.xlo || a >= hex_.xhi || b <= hex_.ylo || b > hex_.yhi) return -1;
    const int cell = (hex_.yhi - b) * w + (a - hex_.xlo);
    return ids_[2 * cell + (up ? 1 : 0)];
  }

  void collect() {
    const int w = hex_.xhi - hex_.xlo;
    const int h = hex_.yhi - hex_.ylo;
    ids_.assign(static_cast<std::size_t>(2) * w * h, -1);
    for (int b = hex_.yhi; b > hex_.ylo; --b) {
      for (int a = hex_.xlo; a < hex_.xhi; ++a) {
        for (int up = 1; up >= 0; --up) {
          const Tri t{a, b, up == 1};
          if (!tri_in(t)) continue;
          const int cell = (hex_.yhi - b) * w + (a - hex_.xlo);
          ids_[2 * cell + up] = static_cast<int>(tris_.size());
          tris_.push_back(t);
        }
      }
    }
    cover_.assign(tris_.size(), kFree);
    const int n_edges = hex_.edge_hi() - hex_.edge_lo() + 1;
    edge_standalone_.assign(std::max(n_edges, 0), false);
  }

  bool is_border(const Tri& t) const { return t.a + t.b == hex_.n; }

  int edge_slot(const Tri& t) const { return t.a - hex_.edge_lo(); }

  int partner_of_border(const Tri& t) const { return id_of(t.a, t.b, !t.up); }

  // Lozenge partners of t: {green, vertical-glued, horizontal-glued}.
  void partners(const Tri& t, int out[3]) const {
    if (t.up) {
      out[0] = (t.a + t.b == hex_.n) ? -1 : id_of(t.a, t.b, false);
      out[1] = id_of(t.a + 1, t.b, false);
      out[2] = id_of(t.a, t.b + 1, false);
    } else {
      out[0] = (t.a + t.b == hex_.n) ? -1 : id_of(t.a, t.b, true);
      out[1] = id_of(t.a - 1, t.b, true);
      out[2] = id_of(t.a, t.b - 1, true);
    }
  }

  Lozenge make_lozenge(const Tri& up_tri, int shape) const {
    // shape 0: green (same cell); 1: vertical edge; 2: horizontal edge.
    Lozenge l;
    const int s = up_tri.a + up_tri.b;
    switch (shape) {
      case 0:
        l.kind = LozengeKind::type_iii;
        l.ai = up_tri.a;
        l.aj = up_tri.b - 1;
        l.region = s >= hex_.n + 1 ? Region::upper : Region::lower;
        break;
      case 1:
        l.kind = LozengeKind::type_i;
        l.ai = up_tri.a;
        l.aj = up_tri.b;
        l.region = s >= hex_.n ? Region::upper : Region::lower;
        break;
      default:
        l.kind = LozengeKind::type_ii;
        l.ai = up_tri.a + 1;
        l.aj = up_tri.b - 1;
        l.region = s >= hex_.n ? Region::upper : Region::lower;
        break;
    }
    return l;
  }

  // Covering a border triangle with a lozenge is only legal while its edge
  // can still receive its one standalone triangle from the other side.
  bool lozenge_cover_ok(int tid) const {
    const Tri& t = tris_[tid];
    if (!is_border(t)) return true;
    const int p = partner_of_border(t);
    return p >= 0 && cover_[p] != kLozenge;
  }

  bool dfs(int scan_from) {
    int t = scan_from;
    while (t < static_cast<int>(tris_.size()) && cover_[t] != kFree) ++t;
    if (t == static_cast<int>(tris_.size())) {
      ++count_;
      if (count_ > budget_)
        throw TilingBudgetError("enumerate_tilings: budget exceeded",
                                count_ - 1);
      if (yield_) {
        LozengeTiling tiling{hex_, cur_loz_, cur_tri_};
        return yield_(tiling);
      }
      return true;
    }

    const Tri& tri = tris_[t];
    bool keep_going = true;

    if (is_border(tri)) {
      const int slot = edge_slot(tri);
      if (!edge_standalone_[slot]) {
        edge_standalone_[slot] = true;
        cover_[t] = kStandalone;
        cur_tri_.push_back(BorderTriangle{tri.a, tri.up});
        keep_going = dfs(t + 1);
        cur_tri_.pop_back();
        cover_[t] = kFree;
        edge_standalone_[slot] = false;
        if (!keep_going) return false;
      }
    }

    int ps[3];
    partners(tri, ps);
    for (int shape = 0; shape < 3; ++shape) {
      const int u = ps[shape];
      if (u < 0 || cover_[u] != kFree) continue;
      cover_[t] = kLozenge;
      cover_[u] = kLozenge;
      if (lozenge_cover_ok(t) && lozenge_cover_ok(u)) {
        const Tri& up_tri = tri.up ? tri : tris_[u];
        cur_loz_.push_back(make_lozenge(up_tri, shape));
        keep_going = dfs(t + 1);
        cur_loz_.pop_back();
      }
      cover_[t] = kFree;
      cover_[u] = kFree;
      if (!keep_going) return false;
    }
    return true;
  }

  const Hexagon& hex_;
  long long budget_;
  const std::function<bool(const LozengeTiling&)>& yield_;
  std::vector<Tri> tris_;
  std::vector<int> ids_;
  std::vector<std::uint8_t> cover_;
  std::vector<char> edge_standalone_;
  std::vector<Lozenge> cur_loz_;
  std::vector<BorderTriangle> cur_tri_;
  long long count_ = 0;
};

}  // namespace

long long enumerate_tilings(const Hexagon& hex,
                            const std::function<bool(const LozengeTiling&)>& yield,
                            long long budget) {
  Enumerator e(hex, budget, yield);
  return e.run();
}

std::vector<LozengeTiling> all_tilings(const Hexagon& hex, long long budget) {
  std::vector<LozengeTiling> out;
  enumerate_tilings(
      hex,
      [&out](const LozengeTiling& t) {
        out.push_back(t);
        return true;
      },
      budget);
  return out;
}

LozengeTiling standard_tiling(const Hexagon& hex) {
  LozengeTiling t;
  t.hex = hex;
  const int n = hex.n;
  const int vj = hex.vj;

  auto push_type_i = [&t](int a, int b, Region r) {
    t.lozenges.push_back(Lozenge{LozengeKind::type_i, a, b, r});
  };
  auto push_green = [&t, n](int a, int b) {
    const Region r = a + b >= n + 1 ? Region::upper : Region::lower;
    t.lozenges.push_back(Lozenge{LozengeKind::type_iii, a, b - 1, r});
  };

  // Upper trapezoid: type-(i) lozenges above the equator, squares plus one
  // downward border triangle per strip below it.
  for (int b = vj + 1; b <= hex.yhi; ++b) {
    const int ai_hi = hex.upper_branch ? n + hex.vi - b - 1 : n + vj - b - 1;
    for (int a = n - b; a <= ai_hi; ++a) push_type_i(a, b, Region::upper);
    for (int a = hex.xlo; a <= n - b - 1; ++a) push_green(a, b);
    t.triangles.push_back(BorderTriangle{n - b, false});
  }
  // Lower trapezoid: squares plus one upward border triangle per strip above
  // the equator, type-(i) lozenges below it.
  for (int b = hex.ylo + 1; b <= vj; ++b) {
    for (int a = n - b + 1; a <= hex.xhi - 1; ++a) push_green(a, b);
    t.triangles.push_back(BorderTriangle{n - b, true});
    const int ai_lo = hex.upper_branch ? vj - b : hex.vi - b;
    for (int a = ai_lo; a <= n - b - 1; ++a) push_type_i(a, b, Region::lower);
  }
  return t;
}

double lozenge_weight(const Lozenge& l, const SquareFunction& k) {
  const auto v = l.vertices();
  return (k.at(v[0][0], v[0][1]) + k.at(v[2][0], v[2][1]) -
          k.at(v[1][0], v[1][1]) - k.at(v[3][0], v[3][1])) /
         3.0;
}

double border_triangle_weight(const BorderTriangle& t, int n,
                              const SquareFunction& k, BorderWeightSign sign) {
  const auto v = t.vertices(n);
  const double d = k.at(v[1][0], v[1][1]) - k.at(v[0][0], v[0][1]);
  return (sign == BorderWeightSign::apex_minus_a ? d : -d) / 3.0;
}

double hexagon_weight(const Hexagon& hex, const SquareFunction& k) {
  const auto& v = hex.vertex;
  return (k.at(v[1][0], v[1][1]) + k.at(v[2][0], v[2][1]) -
          k.at(v[3][0], v[3][1]) + k.at(v[4][0], v[4][1]) +
          k.at(v[5][0], v[5][1])) /
         3.0;
}

double hexagon_weight_alt(const Hexagon& hex, const SquareFunction& k) {
  const auto& v = hex.vertex;
  return (-k.at(v[0][0], v[0][1]) + 2.0 * k.at(v[1][0], v[1][1]) +
          2.0 * k.at(v[5][0], v[5][1])) /
         3.0;
}

double tiling_weight(const LozengeTiling& t, const SquareFunction& k,
                     BorderWeightSign sign) {
  double w = hexagon_weight(t.hex, k);
  for (const Lozenge& l : t.lozenges) w += lozenge_weight(l, k);
  for (const BorderTriangle& b : t.triangles)
    w += border_triangle_weight(b, t.hex.n, k, sign);
  return w;
}

double tiling_weight_alt(const LozengeTiling& t, const SquareFunction& k,
                         BorderWeightSign sign) {
  double w = hexagon_weight_alt(t.hex, k);
  for (const Lozenge& l : t.lozenges) {
    switch (l.color()) {
      case Color::blue:
        w += 2.0 * lozenge_weight(l, k);
        break;
      case Color::green:
        w += lozenge_weight(l, k);
        break;
      case Color::red:
        break;
    }
  }
  for (const BorderTriangle& b : t.triangles)
    w += border_triangle_weight(b, t.hex.n, k, sign);
  return w;
}

std::vector<int> tiling_coefficients(const LozengeTiling& t,
                                     BorderWeightSign sign) {
  const int n = t.hex.n;
  std::vector<int> c(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  auto add = [&c, n](int x, int y, int v) { c[x * (n + 1) + y] += v; };

  const auto& hv = t.hex.vertex;
  add(hv[1][0], hv[1][1], 1);
  add(hv[2][0], hv[2][1], 1);
  add(hv[3][0], hv[3][1], -1);
  add(hv[4][0], hv[4][1], 1);
  add(hv[5][0], hv[5][1], 1);
  for (const Lozenge& l : t.lozenges) {
    const auto v = l.vertices();
    add(v[0][0], v[0][1], 1);
    add(v[2][0], v[2][1], 1);
    add(v[1][0], v[1][1], -1);
    add(v[3][0], v[3][1], -1);
  }
  const int s = sign == BorderWeightSign::apex_minus_a ? 1 : -1;
  for (const BorderTriangle& b : t.triangles) {
    const auto v = b.vertices(n);
    add(v[1][0], v[1][1], s);
    add(v[0][0], v[0][1], -s);
  }
  return c;
}

double speyer_value(int vi, int vj, const SquareFunction& k_tilde,
                    long long budget, BorderWeightSign sign) {
  const Hexagon hex = build_hexagon(k_tilde.n(), vi, vj);
  double best = -std::numeric_limits<double>::infinity();
  enumerate_tilings(
      hex,
      [&](const LozengeTiling& t) {
        best = std::max(best, tiling_weight(t, k_tilde, sign));
        return true;
      },
      budget);
  return best;
}

SpeyerEvaluator::SpeyerEvaluator(int n, long long budget, BorderWeightSign sign)
    : n_(n), budget_(budget), sign_(sign) {}

const SpeyerEvaluator::Functionals& SpeyerEvaluator::get(int vi, int vj) {
  const auto key = std::make_pair(vi, vj);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  Functionals f;
  f.offsets.push_back(0);
  std::unordered_set<std::string> seen;
  const Hexagon hex = build_hexagon(n_, vi, vj);
  enumerate_tilings(
      hex,
      [&](const LozengeTiling& t) {
        const std::vector<int> c = tiling_coefficients(t, sign_);
        std::string key_bytes;
        key_bytes.reserve(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == 0) continue;
          key_bytes.append(reinterpret_cast<const char*>(&i), sizeof(i));
          key_bytes.push_back(static_cast<char>(c[i]));
        }
        if (!seen.insert(key_bytes).second) return true;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == 0) continue;
          f.idx.push_back(static_cast<std::int32_t>(i));
          f.coeff.push_back(static_cast<std::int8_t>(c[i]));
        }
        f.offsets.push_back(static_cast<std::int32_t>(f.idx.size()));
        return true;
      },
      budget_);
  return cache_.emplace(key, std::move(f)).first->second;
}

double SpeyerEvaluator::value(int vi, int vj, const SquareFunction& k_tilde) {
  if (k_tilde.n() != n_)
    throw std::invalid_argument("SpeyerEvaluator: grid size mismatch");
  const Functionals& f = get(vi, vj);
  const double* v = k_tilde.values().data();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r + 1 < f.offsets.size(); ++r) {
    double acc = 0.0;
    for (std::int32_t k = f.offsets[r]; k < f.offsets[r + 1]; ++k)
      acc += f.coeff[k] * v[f.idx[k]];
    best = std::max(best, acc);
  }
  return best / 3.0;
}

std::size_t SpeyerEvaluator::functional_count(int vi, int vj) {
  return get(vi, vj).offsets.size() - 1;
}

}  // namespace hivelab::oct
