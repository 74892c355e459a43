#pragma once

// Restricted root systems of sl(n,R), the Weyl group as coordinate
// permutations, and the crown cell
//
//   omega = { X in a : |alpha(X)| < pi/2 for every restricted root alpha }
//
// handled as an exact polytope. Exact vectors are expressed in pi-units, so
// the cell bound pi/2 is the rational 1/2 and every membership, vertex and
// disjointness question is decided without rounding.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

// Under C++20 rewritten comparisons, Boost 1.74 resolves rational == int to
// its own reversed template and recurses forever. An exact non-template
// overload takes precedence over both.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
}  // namespace boost

namespace crownlab::rootsys {

using Rational = boost::rational<std::int64_t>;

/// Point of the Cartan subspace in pi-units: entry k is lambda_k / pi.
using ExactVector = std::vector<Rational>;

/// Coordinate permutation: (w.X)[i] = X[w[i]].
using Permutation = std::vector<int>;

/// Linear functional sum_k c_k eps_k on the diagonal Cartan subspace.
struct Root {
  std::vector<int> coefficients;

  Root operator-() const;
  bool operator==(const Root&) const = default;
  auto operator<=>(const Root&) const = default;

  /// Type-A shape eps_k - eps_h: one +1, one -1, zeros elsewhere.
  bool is_type_a() const;
  /// For a type-A root eps_k - eps_h returns (k, h), zero-based.
  std::pair<int, int> type_a_indices() const;

  Rational operator()(const ExactVector& x) const;
  double operator()(const Eigen::VectorXd& x) const;
};

class RootSystem {
 public:
  /// Explicit root list. `positive` must not contain a root together with
  /// its negative; the full system is positive union -positive.
  RootSystem(int dimension, std::vector<Root> positive, std::vector<Permutation> weyl_generators);

  /// Number of coordinates n (the Cartan subspace is the traceless hyperplane of R^n).
  int dimension() const { return dimension_; }
  int rank() const { return dimension_ - 1; }

  const std::vector<Root>& all_roots() const { return all_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<Permutation>& weyl_generators() const { return generators_; }

 private:
  int dimension_;
  std::vector<Root> positive_;
  std::vector<Root> all_;
  std::vector<Permutation> generators_;
};

/// Roots eps_k - eps_h (k != h) of sl(n,R); positive iff k < h; Weyl
/// generators are the adjacent transpositions.
RootSystem restricted_roots_sl(int n);

/// |root(X)| < bound, bound in pi-units.
struct CellInequality {
  Root root;
  Rational bound;
};

struct CrownCell {
  int dimension = 0;
  std::vector<CellInequality> inequalities;  // one per positive root
};

CrownCell crown_cell(const RootSystem& rs);

/// Strict membership, exact. Throws DimensionError on size mismatch and
/// InvalidElement when x is not traceless.
bool cell_contains(const CrownCell& cell, const ExactVector& x);
/// Strict membership for a radian-valued vector; tracelessness to 1e-12.
bool cell_contains(const CrownCell& cell, const Eigen::VectorXd& radians);

/// Chart of the traceless hyperplane dropping the first coordinate:
/// (lambda_2, ..., lambda_n) with lambda_1 = -(lambda_2 + ... + lambda_n).
ExactVector to_chart(const ExactVector& x);
ExactVector from_chart(const ExactVector& y);

/// |coefficients . y| < bound in chart coordinates.
struct ChartInequality {
  std::vector<Rational> coefficients;
  Rational bound;
};
std::vector<ChartInequality> chart_inequalities(const CrownCell& cell);

/// Vertices of the closed cell, exact, in full coordinates. In the 2D chart
/// they are ordered counterclockwise starting from the smallest polar angle
/// in [0, 2pi); 1D endpoints ascend; 3D vertices are sorted lexicographically.
/// Supports cells of dimension 2..4 (chart dimension 1..3).
std::vector<ExactVector> cell_vertices(const CrownCell& cell);

std::set<ExactVector> weyl_orbit(const RootSystem& rs, const ExactVector& x);
std::vector<Eigen::VectorXd> weyl_orbit(const RootSystem& rs, const Eigen::VectorXd& x);

/// Exact test of (s*omega) n (s*omega + offset) != empty in the chart,
/// `offset` in pi-units. Decided by Fourier-Motzkin elimination of the
/// strict system.
bool translates_intersect(const CrownCell& cell, const ExactVector& chart_offset,
                          Rational scale = Rational(1));

struct TranslateOffset {
  int l = 0;
  int m = 0;
  bool disjoint = false;
  /// Chart row whose slab separates the two translates, if any; the slab
  /// test is the independent witness for the elimination verdict.
  std::optional<std::size_t> separating_row;
};

struct TranslateReport {
  int range_bound = 0;
  std::vector<TranslateOffset> offsets;  // (l, m) in row-major order, (0,0) skipped
  bool all_disjoint = false;
  /// max |chart coordinate| over the closed cell.
  Rational box_half_width;
  /// Every offset with max(|l|,|m|) >= this is disjoint because the
  /// bounding boxes cannot overlap.
  int box_certified_from = 0;
};

/// Requires a cell of dimension 3 (the (lambda_2, lambda_3) chart of sl(3));
/// throws DimensionError otherwise.
TranslateReport translate_disjointness(const CrownCell& cell, int range_bound);

struct ScaleThreshold {
  Rational last_disjoint;  // largest grid scale with all translates disjoint
  Rational first_overlap;  // smallest grid scale with some translate meeting the cell
};

/// Searches scales k/denominator in [1, max_scale] for the first one at which
/// some offset in [-range_bound, range_bound]^2 \ {0} overlaps. Throws
/// OutOfRange when the cell stays disjoint up to max_scale.
ScaleThreshold first_overlap_scale(const CrownCell& cell, int range_bound, int denominator,
                                   int max_scale);

/// u(X) = sum over all roots of (alpha(X)^2 - (pi/2)^2), X in radians.
double exhaustion_u(const RootSystem& rs, const Eigen::VectorXd& radians);
/// Same sum for X in pi-units, returned as the exact coefficient of pi^2.
Rational exhaustion_u_pi2(const RootSystem& rs, const ExactVector& x);

struct HessianReport {
  /// 2 sum_alpha alpha alpha^T on R^n (integer entries).
  Eigen::MatrixXd full;
  /// Restriction to the traceless hyperplane in the chart basis
  /// e_{j+1} - e_1, exact.
  std::vector<std::vector<Rational>> restricted;
  /// Sylvester criterion on `restricted`, exact.
  bool positive_definite = false;
  /// Smallest eigenvalue on an orthonormal basis of the hyperplane.
  double min_eigenvalue = 0.0;
};

HessianReport exhaustion_hessian(const RootSystem& rs);

/// Matrix unit E_kh spanning the root space of eps_k - eps_h in sl(n).
Eigen::MatrixXd root_vector(const Root& root);

}  // namespace crownlab::rootsys
