#pragma once

// Matrix-group decompositions in SL(n,R): Iwasawa g = n a k, the
// multiplicative Jordan-Chevalley split g = g_u g_h g_e, conjugacy
// classification, conjugation into NA, the Cartan involution, and the
// Lie-closure / lower-central-series machinery behind the nilpotency
// criterion for quotients by discrete subgroups of NA.

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace crownlab::decomp {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct Tolerances {
  double structural = 1e-12;
  double residual = 1e-10;
  /// Relative tolerance for eigenvalue decisions (unit modulus, positivity,
  /// equality to 1).
  double spectral = 1e-8;
  /// Relative distance under which eigenvalues are grouped into one cluster
  /// before the additive split. Defective eigenvalues of size-k Jordan blocks
  /// are split by O(eps^(1/k)) in floating point, so this is much looser
  /// than `spectral`. One retry at ten times this value is made when the
  /// first grouping cannot be decoupled.
  double cluster = 1e-4;
};

/// Validates a real square matrix with |det - 1| <= tol.residual.
/// Throws InvalidElement otherwise.
void require_unimodular(const Matrix& g, const Tolerances& tol = {});

struct IwasawaFactors {
  Matrix n;  // unit upper triangular
  Matrix a;  // positive diagonal, det 1
  Matrix k;  // special orthogonal
};

IwasawaFactors iwasawa_nak(const Matrix& g, const Tolerances& tol = {});

struct JordanFactors {
  Matrix unipotent;
  Matrix hyperbolic;
  Matrix elliptic;
};

/// Multiplicative Jordan decomposition g = g_u g_h g_e with commuting
/// factors. Only requires g invertible, so it also applies to Ad(g).
/// Throws IllConditioned when separate eigenvalue clusters cannot be
/// decoupled stably.
JordanFactors jordan_multiplicative(const Matrix& g, const Tolerances& tol = {});

enum class ElementClass { Unipotent, Hyperbolic, Elliptic, Mixed };

std::string_view to_string(ElementClass c);

/// Classification by the Jordan factors. The identity is reported as
/// unipotent (the first matching class).
ElementClass classify_element(const Matrix& g, const Tolerances& tol = {});
/// Same decision without the unimodularity check.
ElementClass classify_matrix(const Matrix& g, const Tolerances& tol = {});

/// g_u g_h: the element with its elliptic part removed.
Matrix gamma_prime(const Matrix& g, const Tolerances& tol = {});

struct NAConjugation {
  Matrix h;  // special orthogonal
  Matrix t;  // upper triangular with positive diagonal, t = h g h^-1
};

/// Throws EllipticObstruction when some eigenvalue is not a positive real.
NAConjugation conjugate_into_na(const Matrix& g, const Tolerances& tol = {});

/// theta(g) = (g^T)^-1. The complex overload is the holomorphic extension
/// (plain transpose, no conjugation). Throws InvalidElement when singular.
Matrix cartan_theta(const Matrix& g);
ComplexMatrix cartan_theta(const ComplexMatrix& g);

inline Matrix bracket(const Matrix& x, const Matrix& y) { return x * y - y * x; }

/// Linear span of traceless n x n matrices with a Frobenius-orthonormal basis.
class LieAlgebraSpan {
 public:
  explicit LieAlgebraSpan(int n) : n_(n) {}

  int matrix_size() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Orthogonal projection of x onto the span.
  Matrix project(const Matrix& x) const;
  /// Adds the component of x orthogonal to the span when its norm exceeds
  /// rank_tol (relative to max(1, |x|)). Returns true when the span grew.
  bool insert(const Matrix& x, double rank_tol);
  /// True when every pairwise bracket lies in the span up to `tol`.
  bool is_closed(double tol) const;

 private:
  int n_;
  std::vector<Matrix> basis_;
};

/// Smallest bracket-closed span containing the generators.
LieAlgebraSpan lie_algebra_closure(const std::vector<Matrix>& generators, double rank_tol = 1e-10);

/// Dimensions of g, [g,g], [g,[g,g]], ... until the series stabilizes or
/// reaches 0; the last entry repeats the stable dimension when it is not 0.
/// Throws NotAnAlgebra for a span that is not bracket-closed.
std::vector<std::size_t> lower_central_series(const LieAlgebraSpan& span, double rank_tol = 1e-10);

bool is_nilpotent_algebra(const LieAlgebraSpan& span, double rank_tol = 1e-10);

/// Principal logarithm of an upper triangular matrix with positive diagonal
/// (inverse scaling and squaring). Throws NotInNA for other inputs.
Matrix log_na(const Matrix& t, const Tolerances& tol = {});

struct SteinReport {
  std::vector<Matrix> logs;
  std::size_t closure_dimension = 0;
  std::vector<std::size_t> central_series;
  bool nilpotent = false;
};

/// Nilpotency of the Lie algebra generated by the logarithms of the
/// generators. Generators must be upper triangular with positive diagonal.
SteinReport stein_quotient_report(const std::vector<Matrix>& generators, const Tolerances& tol = {});
bool stein_quotient_predicate(const std::vector<Matrix>& generators, const Tolerances& tol = {});

/// Basis of sl(n) ordered by decreasing root height: positive root vectors
/// E_kh (height h - k, highest first), then H_i = E_ii - E_{i+1,i+1}, then
/// negative root vectors.
std::vector<Matrix> root_ordered_basis(int n);

/// Coordinates of a traceless matrix in root_ordered_basis(n).
Eigen::VectorXd root_basis_coordinates(const Matrix& x);

/// Matrix of ad(x) on sl(n) in root_ordered_basis(n).
Matrix adjoint_matrix(const Matrix& x);

/// Matrix of Ad(g) on sl(n) in root_ordered_basis(n).
Matrix big_adjoint_matrix(const Matrix& g);

}  // namespace crownlab::decomp
