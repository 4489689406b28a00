#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hivelab/hive_gt.hpp"

namespace hivelab::oct {

using hive::AugmentedHive;
using hive::GTPattern;
using hive::Hive;

/// Real values on the full square grid {0,...,n}^2.
class SquareFunction {
 public:
  explicit SquareFunction(int n);

  int n() const { return n_; }
  double& at(int i, int j) { return v_[index(i, j)]; }
  double at(int i, int j) const { return v_[index(i, j)]; }
  const std::vector<double>& values() const { return v_; }
  double max_abs() const;

  std::size_t index(int i, int j) const {
    if (i < 0 || i > n_ || j < 0 || j > n_)
      throw std::out_of_range("SquareFunction: point outside grid");
    return static_cast<std::size_t>(i) * (n_ + 1) + j;
  }

 private:
  int n_;
  std::vector<double> v_;
};

// Packing of a hive pair into one square function. The "upper" form places
// the first hive on {i <= j} and the second, shifted by -gamma_sum, on
// {i >= j}; the "lower" form places them on {i+j >= n} and {i+j <= n}.
// Throws if the two hives disagree on the shared diagonal beyond tol
// (tol < 0 -> scale-aware default).
SquareFunction pack_upper(const Hive& h, const Hive& h_prime, double gamma_sum,
                          double tol = -1.0);
SquareFunction pack_lower(const Hive& k, const Hive& k_prime, double gamma_sum,
                          double tol = -1.0);
std::pair<Hive, Hive> unpack_upper(const SquareFunction& h_tilde,
                                   double gamma_sum);
std::pair<Hive, Hive> unpack_lower(const SquareFunction& k_tilde,
                                   double gamma_sum);

struct PackedGTPair {
  SquareFunction k_tilde;
  double gap_constant;  // G
  double gamma_sum;     // G * n(n-1)/2
};

/// Smallest simple gap constant satisfying the strict packing inequality.
double default_gap_constant(const GTPattern& g1, const GTPattern& g2);

/// Embeds the pair of patterns as a hive pair along the arithmetic gap tuple
/// gamma_i = G(n-i) and packs them into a single square function. Downstream
/// results do not depend on G as long as it clears the spread bound.
PackedGTPair gt_pair_to_square(const GTPattern& g1, const GTPattern& g2,
                               double gap_constant);

/// Max-plus excavation: seeds the two lower tetrahedron faces from k_tilde,
/// fills the interior by the octahedron rule, and reads the upper faces.
/// The square boundary is returned unchanged.
SquareFunction excavate(const SquareFunction& k_tilde);

/// Exact inverse of excavate: fills the tetrahedron from the upper faces
/// downward by solving the octahedron rule for its minimal vertex.
SquareFunction inverse_excavate(const SquareFunction& h_tilde);

/// Splits an excavated square function back into a hive on {i <= j} and the
/// pattern carried by the complementary triangle. The complementary edge must
/// hold partial sums of a gap tuple consistent with gamma_sum.
AugmentedHive unpack_to_augmented(const SquareFunction& h_tilde,
                                  double gamma_sum, double tol = -1.0);

struct Hexagon {
  int n = 0;
  int vi = 0, vj = 0;                          // probe point v
  bool upper_branch = false;                   // vi <= vj
  std::array<std::array<int, 2>, 6> vertex{};  // A..F
  // Half-plane description: x in [xlo,xhi], y in [ylo,yhi], x+y in [slo,shi].
  int xlo = 0, xhi = 0, ylo = 0, yhi = 0, slo = 0, shi = 0;

  bool contains(int x, int y) const {
    return x >= xlo && x <= xhi && y >= ylo && y <= yhi && x + y >= slo &&
           x + y <= shi;
  }
  std::array<int, 2> equator_mid() const { return {n - vj, vj}; }  // BE cap AD
  // Border edges ((a,n-a),(a+1,n-a-1)) inside the hexagon.
  int edge_lo() const;
  int edge_hi() const;
};

/// Excavation hexagon centered at an interior point of the square.
Hexagon build_hexagon(int n, int vi, int vj);

// Same flat text format as hives, kind=square: n+1 rows of n+1 values,
// row i holding k(i, 0..n).
std::string to_text(const SquareFunction& s);
SquareFunction square_from_text(const std::string& text);

enum class LozengeKind { type_i, type_ii, type_iii };
enum class Region { upper, lower };  // above / below the antidiagonal
enum class Color { blue, red, green };

struct Lozenge {
  LozengeKind kind;
  int ai = 0, aj = 0;  // anchor vertex A
  Region region;

  Color color() const;
  std::array<std::array<int, 2>, 4> vertices() const;  // A,B,C,D
};

struct BorderTriangle {
  int edge = 0;  // border edge ((edge,n-edge),(edge+1,n-edge-1))
  bool upward = false;

  // Labels: A = (edge, n-edge), B = apex, C = (edge+1, n-edge-1).
  std::array<std::array<int, 2>, 3> vertices(int n) const;
};

struct LozengeTiling {
  Hexagon hex;
  std::vector<Lozenge> lozenges;
  std::vector<BorderTriangle> triangles;
};

struct TilingBudgetError : std::runtime_error {
  TilingBudgetError(const std::string& msg, long long count)
      : std::runtime_error(msg), partial_count(count) {}
  long long partial_count;
};

/// Backtracking enumeration over unit triangles in a fixed scan order; yields
/// every tiling exactly once in a deterministic order. `yield` may be empty
/// (count only) and may return false to stop early. Returns the number of
/// tilings yielded; throws TilingBudgetError past `budget`.
long long enumerate_tilings(
    const Hexagon& hex,
    const std::function<bool(const LozengeTiling&)>& yield = nullptr,
    long long budget = 10'000'000);

std::vector<LozengeTiling> all_tilings(const Hexagon& hex,
                                       long long budget = 10'000'000);

/// The telescoping tiling: type-(i) lozenges above the probe line in the
/// upper region and below it in the lower region, squares plus one border
/// triangle per edge elsewhere.
LozengeTiling standard_tiling(const Hexagon& hex);

/// Sign convention for border-triangle weights. The apex-minus-A form is the
/// one that matches the excavation recurrence (resolved by calibration; the
/// mirrored form is kept for the calibration test itself).
enum class BorderWeightSign { apex_minus_a, a_minus_apex };

double lozenge_weight(const Lozenge& l, const SquareFunction& k_tilde);
double border_triangle_weight(
    const BorderTriangle& t, int n, const SquareFunction& k_tilde,
    BorderWeightSign sign = BorderWeightSign::apex_minus_a);
double hexagon_weight(const Hexagon& hex, const SquareFunction& k_tilde);
double hexagon_weight_alt(const Hexagon& hex, const SquareFunction& k_tilde);

double tiling_weight(const LozengeTiling& t, const SquareFunction& k_tilde,
                     BorderWeightSign sign = BorderWeightSign::apex_minus_a);
/// Red-free form: 2*blue + green + triangles + the modified hexagon weight.
/// Equal to tiling_weight identically.
double tiling_weight_alt(const LozengeTiling& t, const SquareFunction& k_tilde,
                         BorderWeightSign sign = BorderWeightSign::apex_minus_a);

/// Coefficient vector (in units of 1/3) of a tiling's weight as a linear
/// functional of the square function.
std::vector<int> tiling_coefficients(const LozengeTiling& t,
                                     BorderWeightSign sign = BorderWeightSign::apex_minus_a);

/// Maximum of tiling_weight over all tilings of the hexagon at v.
double speyer_value(int vi, int vj, const SquareFunction& k_tilde,
                    long long budget = 10'000'000,
                    BorderWeightSign sign = BorderWeightSign::apex_minus_a);

/// Caches the deduplicated weight functionals per probe point so repeated
/// evaluations cost one pass over the cached coefficients.
class SpeyerEvaluator {
 public:
  explicit SpeyerEvaluator(int n, long long budget = 10'000'000,
                           BorderWeightSign sign = BorderWeightSign::apex_minus_a);

  double value(int vi, int vj, const SquareFunction& k_tilde);
  std::size_t functional_count(int vi, int vj);

 private:
  struct Functionals {
    std::vector<std::int32_t> offsets;  // CSR row starts
    std::vector<std::int32_t> idx;
    std::vector<std::int8_t> coeff;     // units of 1/3
  };
  const Functionals& get(int vi, int vj);

  int n_;
  long long budget_;
  BorderWeightSign sign_;
  std::map<std::pair<int, int>, Functionals> cache_;
};

}  // namespace hivelab::oct
