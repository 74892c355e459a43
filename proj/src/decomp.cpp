#include "crownlab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "crownlab/error.hpp"

namespace crownlab::decomp {

namespace {

using Complex = std::complex<double>;

bool is_square_finite(const Matrix& g) { return g.rows() == g.cols() && g.rows() > 0 && g.allFinite(); }

// Swaps the adjacent diagonal entries k, k+1 of the upper triangular t by a
// unitary rotation, updating u so that u t u^H is preserved.
void swap_schur_entries(ComplexMatrix& t, ComplexMatrix& u, Eigen::Index k) {
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  Eigen::Vector2cd v(t(k, k + 1), t22 - t11);
  const double norm = v.norm();
  if (norm == 0.0) return;
  v /= norm;
  Eigen::Matrix2cd rot;
  rot << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  const Eigen::Index n = t.rows();
  t.middleRows(k, 2) = rot.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * rot;
  u.middleCols(k, 2) = u.middleCols(k, 2) * rot;
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  (void)n;
}

// Solves a x - x b = c for upper triangular a, b with disjoint spectra.
ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const ComplexMatrix& c) {
  const Eigen::Index p = a.rows();
  const Eigen::Index q = b.rows();
  ComplexMatrix x(p, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs += b(i, j) * x.col(i);
    ComplexMatrix shifted = a;
    shifted.diagonal().array() -= b(j, j);
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return x;
}

// Block-diagonalized complex Schur form: g = v diag(blocks) v^-1 where each
// block is upper triangular with its eigenvalues in one cluster.
struct ClusteredSchur {
  ComplexMatrix v;
  ComplexMatrix v_inv;
  ComplexMatrix blocks;  // block diagonal, upper triangular blocks
  std::vector<Eigen::Index> starts;  // block boundaries, last = n
  std::vector<Complex> means;        // cluster mean per block
  double condition = 1.0;
};

ClusteredSchur clustered_schur(const Matrix& g, double cluster_tol) {
  const Eigen::Index n = g.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(g.cast<Complex>());
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::IllConditioned, "Schur iteration did not converge");
  }
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();

  // Single-linkage clustering on relative eigenvalue distance.
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  auto find = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double scale = std::max(std::abs(t(i, i)), std::abs(t(j, j)));
      if (std::abs(t(i, i) - t(j, j)) <= cluster_tol * scale) label[find(j)] = find(i);
    }
  }
  // Order clusters by first appearance on the diagonal.
  std::vector<int> cluster_of(n);
  std::vector<int> order_of_root(n, -1);
  int next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int root = find(static_cast<int>(i));
    if (order_of_root[root] < 0) order_of_root[root] = next++;
    cluster_of[i] = order_of_root[root];
  }

  // Bubble the diagonal into contiguous clusters.
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (cluster_of[k] > cluster_of[k + 1]) {
        swap_schur_entries(t, u, k);
        std::swap(cluster_of[k], cluster_of[k + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }

  ClusteredSchur out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == 0 || cluster_of[i] != cluster_of[i - 1]) out.starts.push_back(i);
  }
  out.starts.push_back(n);

  // Decouple the blocks: with y = [I x; 0 I] and t11 x - x t22 = -t12,
  // y^-1 t y = diag(t11, t22). Repeat on the trailing part.
  ComplexMatrix w = ComplexMatrix::Identity(n, n);
  ComplexMatrix w_inv = ComplexMatrix::Identity(n, n);
  for (std::size_t b = 0; b + 2 < out.starts.size(); ++b) {
    const Eigen::Index s = out.starts[b];
    const Eigen::Index e = out.starts[b + 1];
    const Eigen::Index p = e - s;
    const Eigen::Index q = n - e;
    const ComplexMatrix x = solve_triangular_sylvester(t.block(s, s, p, p), t.block(e, e, q, q),
                                                       -t.block(s, e, p, q));
    // t <- y^-1 t y only touches the (s, e) block, which becomes zero.
    t.block(s, e, p, q).setZero();
    // w <- w y, w_inv <- y^-1 w_inv.
    w.block(0, e, n, q) += w.block(0, s, n, p) * x;
    w_inv.block(s, 0, p, n) -= x * w_inv.block(e, 0, q, n);
  }

  out.v = u * w;
  out.v_inv = w_inv * u.adjoint();
  out.blocks = t;
  out.condition = out.v.norm() * out.v_inv.norm() / static_cast<double>(n);
  for (std::size_t b = 0; b + 1 < out.starts.size(); ++b) {
    const Eigen::Index s = out.starts[b];
    const Eigen::Index e = out.starts[b + 1];
    out.means.push_back(t.diagonal().segment(s, e - s).mean());
  }
  return out;
}

struct JordanAnalysis {
  JordanFactors factors;
  bool unipotent_trivial = false;   // g_u = I
  bool hyperbolic_trivial = false;  // g_h = I
  bool elliptic_trivial = false;    // g_e = I
  std::vector<Complex> means;
};

Matrix real_part_checked(const ComplexMatrix& m, const Tolerances& tol) {
  const double scale = std::max(1.0, m.norm());
  if (m.imag().norm() > std::sqrt(tol.spectral) * scale) {
    throw Error(ErrorKind::InternalError, "Jordan factor has a non-negligible imaginary part");
  }
  return m.real();
}

JordanAnalysis analyze(const Matrix& g, const Tolerances& tol) {
  if (!is_square_finite(g)) throw Error(ErrorKind::InvalidElement, "expected a finite square matrix");
  const Eigen::Index n = g.rows();
  // A defective eigenvalue of a badly scaled matrix can split beyond the
  // clustering tolerance; allow one coarser pass before giving up.
  ClusteredSchur cs = clustered_schur(g, tol.cluster);
  if (!(cs.condition <= 1.0 / tol.spectral)) cs = clustered_schur(g, 10.0 * tol.cluster);
  if (!(cs.condition <= 1.0 / tol.spectral)) {
    throw Error(ErrorKind::IllConditioned,
                fmt::format("eigenvalue clusters are mixed (decoupling condition {:.3g})", cs.condition));
  }

  JordanAnalysis out;
  out.means = cs.means;
  Eigen::VectorXcd semisimple(n), modulus(n), phase(n);
  double strict_upper = 0.0;
  out.hyperbolic_trivial = true;
  out.elliptic_trivial = true;
  for (std::size_t b = 0; b < cs.means.size(); ++b) {
    const Complex mu = cs.means[b];
    if (std::abs(mu) == 0.0) throw Error(ErrorKind::InvalidElement, "matrix is singular");
    const Eigen::Index s = cs.starts[b];
    const Eigen::Index len = cs.starts[b + 1] - s;
    semisimple.segment(s, len).setConstant(mu);
    modulus.segment(s, len).setConstant(std::abs(mu));
    phase.segment(s, len).setConstant(mu / std::abs(mu));
    const auto block = cs.blocks.block(s, s, len, len);
    strict_upper += block.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().squaredNorm();
    out.hyperbolic_trivial = out.hyperbolic_trivial && std::abs(std::abs(mu) - 1.0) <= tol.spectral;
    out.elliptic_trivial = out.elliptic_trivial && std::abs(std::arg(mu)) <= tol.spectral;
  }
  out.unipotent_trivial = std::sqrt(strict_upper) <= tol.spectral * std::max(1.0, g.norm());

  const ComplexMatrix s_inv = cs.v * semisimple.cwiseInverse().asDiagonal() * cs.v_inv;
  out.factors.hyperbolic = real_part_checked(cs.v * modulus.asDiagonal() * cs.v_inv, tol);
  out.factors.elliptic = real_part_checked(cs.v * phase.asDiagonal() * cs.v_inv, tol);
  out.factors.unipotent = real_part_checked(s_inv * g.cast<Complex>(), tol);
  return out;
}

Matrix signed_antidiagonal(Eigen::Index n) {
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
  if (p.determinant() < 0) p(0, n - 1) = -1.0;
  return p;
}

bool lower_part_negligible(const Matrix& g, double tol) {
  const double scale = std::max(1.0, g.norm());
  return g.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() <= tol * scale;
}

// Rotation r (2x2) minimizing |(r b r^T)(1,0)|. For a 2x2 block with a
// near-real double eigenvalue the minimum is at roundoff level.
Eigen::Matrix2d triangularizing_rotation(const Eigen::Matrix2d& b) {
  // (r b r^T)(1,0) = (c - b)/2 + (c + b)/2 cos 2x + (d - a)/2 sin 2x for
  // r = [[cos x, sin x], [-sin x, cos x]] acting as r b r^T.
  const double a = b(0, 0), bb = b(0, 1), c = b(1, 0), d = b(1, 1);
  const double p = (c + bb) / 2;
  const double q = (d - a) / 2;
  const double mid = (c - bb) / 2;
  const double amp = std::hypot(p, q);
  double angle2 = 0.0;
  if (amp > 0) {
    const double phi = std::atan2(q, p);  // p cos 2x + q sin 2x = amp cos(2x - phi)
    const double target = std::clamp(-mid / amp, -1.0, 1.0);
    angle2 = phi + std::acos(target);
  }
  const double x = angle2 / 2;
  Eigen::Matrix2d r;
  r << std::cos(x), std::sin(x), -std::sin(x), std::cos(x);
  return r;
}

}  // namespace

void require_unimodular(const Matrix& g, const Tolerances& tol) {
  if (!is_square_finite(g)) throw Error(ErrorKind::InvalidElement, "expected a finite square matrix");
  const double det = g.determinant();
  if (!(std::abs(det - 1.0) <= tol.residual)) {
    throw Error(ErrorKind::InvalidElement, fmt::format("determinant {:.17g} is not 1", det));
  }
}

IwasawaFactors iwasawa_nak(const Matrix& g, const Tolerances& tol) {
  require_unimodular(g, tol);
  const Eigen::Index n = g.rows();
  // RQ through QR of the flipped transpose: with p the reversal permutation,
  // p g^T p = q1 r1 gives g = (p r1^T p)(p q1^T p).
  Matrix flip = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) flip(i, n - 1 - i) = 1.0;
  Eigen::HouseholderQR<Matrix> qr(flip * g.transpose() * flip);
  const Matrix q1 = qr.householderQ();
  const Matrix r1 = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix r = flip * r1.transpose() * flip;
  Matrix k = flip * q1.transpose() * flip;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0) {
      r.col(i) = -r.col(i);
      k.row(i) = -k.row(i);
    }
  }

  IwasawaFactors f;
  f.a = Matrix::Zero(n, n);
  f.n = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(r(i, i) > 0)) throw Error(ErrorKind::InvalidElement, "matrix is singular");
    f.a(i, i) = r(i, i);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) f.n(i, j) = r(i, j) / r(j, j);
  }
  f.k = std::move(k);
  if (f.k.determinant() < 0) throw Error(ErrorKind::InternalError, "orthogonal factor has det -1");
  return f;
}

JordanFactors jordan_multiplicative(const Matrix& g, const Tolerances& tol) {
  return analyze(g, tol).factors;
}

std::string_view to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Unipotent: return "unipotent";
    case ElementClass::Hyperbolic: return "hyperbolic";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Mixed: return "mixed";
  }
  return "mixed";
}

ElementClass classify_matrix(const Matrix& g, const Tolerances& tol) {
  const JordanAnalysis j = analyze(g, tol);
  if (j.hyperbolic_trivial && j.elliptic_trivial) return ElementClass::Unipotent;
  if (j.unipotent_trivial && j.elliptic_trivial) return ElementClass::Hyperbolic;
  if (j.unipotent_trivial && j.hyperbolic_trivial) return ElementClass::Elliptic;
  return ElementClass::Mixed;
}

ElementClass classify_element(const Matrix& g, const Tolerances& tol) {
  require_unimodular(g, tol);
  return classify_matrix(g, tol);
}

Matrix gamma_prime(const Matrix& g, const Tolerances& tol) {
  require_unimodular(g, tol);
  const JordanFactors f = jordan_multiplicative(g, tol);
  return f.unipotent * f.hyperbolic;
}

NAConjugation conjugate_into_na(const Matrix& g, const Tolerances& tol) {
  require_unimodular(g, tol);
  const Eigen::Index n = g.rows();
  const JordanAnalysis j = analyze(g, tol);
  if (!j.elliptic_trivial) {
    throw Error(ErrorKind::EllipticObstruction, "element has a nontrivial elliptic part");
  }

  if (lower_part_negligible(g, tol.structural) && (g.diagonal().array() > 0).all()) {
    return {Matrix::Identity(n, n), g.triangularView<Eigen::Upper>()};
  }
  const Matrix gt = g.transpose();
  if (lower_part_negligible(gt, tol.structural) && (g.diagonal().array() > 0).all()) {
    const Matrix p = signed_antidiagonal(n);
    Matrix t = p * g.triangularView<Eigen::Lower>().toDenseMatrix() * p.transpose();
    return {p, t.triangularView<Eigen::Upper>()};
  }

  Eigen::RealSchur<Matrix> schur(g);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::IllConditioned, "real Schur failed");
  Matrix u = schur.matrixU();
  Matrix t = schur.matrixT();

  // Positive spectrum: any 2x2 bump left by the real Schur form belongs to a
  // numerically split double eigenvalue; rotate it to triangular form.
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (t(k + 1, k) == 0.0) continue;
    const Eigen::Matrix2d r = triangularizing_rotation(t.block<2, 2>(k, k));
    t.middleRows(k, 2) = r * t.middleRows(k, 2);
    t.middleCols(k, 2) = t.middleCols(k, 2) * r.transpose();
    u.middleCols(k, 2) = u.middleCols(k, 2) * r.transpose();
  }

  Matrix h = u.transpose();
  if (h.determinant() < 0) {
    h.row(0) = -h.row(0);
    t.row(0) = -t.row(0);
    t.col(0) = -t.col(0);
  }
  if ((t.diagonal().array() <= 0).any()) {
    throw Error(ErrorKind::EllipticObstruction, "triangular form has a non-positive diagonal entry");
  }
  const double residual_scale = std::max(1.0, g.norm());
  if (!lower_part_negligible(t, std::sqrt(tol.spectral))) {
    throw Error(ErrorKind::IllConditioned,
                fmt::format("could not triangularize (subdiagonal {:.3g})",
                            t.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() /
                                residual_scale));
  }
  return {h, t.triangularView<Eigen::Upper>()};
}

Matrix cartan_theta(const Matrix& g) {
  if (!is_square_finite(g)) throw Error(ErrorKind::InvalidElement, "expected a finite square matrix");
  Eigen::FullPivLU<Matrix> lu(g.transpose());
  if (!lu.isInvertible()) throw Error(ErrorKind::InvalidElement, "matrix is singular");
  return lu.inverse();
}

ComplexMatrix cartan_theta(const ComplexMatrix& g) {
  if (g.rows() != g.cols() || !g.allFinite()) {
    throw Error(ErrorKind::InvalidElement, "expected a finite square matrix");
  }
  Eigen::FullPivLU<ComplexMatrix> lu(g.transpose());
  if (!lu.isInvertible()) throw Error(ErrorKind::InvalidElement, "matrix is singular");
  return lu.inverse();
}

Matrix LieAlgebraSpan::project(const Matrix& x) const {
  Matrix p = Matrix::Zero(x.rows(), x.cols());
  for (const auto& b : basis_) p += (b.cwiseProduct(x).sum()) * b;
  return p;
}

bool LieAlgebraSpan::insert(const Matrix& x, double rank_tol) {
  if (x.rows() != n_ || x.cols() != n_) {
    throw Error(ErrorKind::DimensionError, "matrix size differs from the algebra");
  }
  Matrix r = x - project(x);
  r -= project(r);  // second Gram-Schmidt pass
  const double norm = r.norm();
  if (norm <= rank_tol * std::max(1.0, x.norm())) return false;
  basis_.push_back(r / norm);
  return true;
}

bool LieAlgebraSpan::is_closed(double tol) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      const Matrix br = bracket(basis_[i], basis_[j]);
      if ((br - project(br)).norm() > tol * std::max(1.0, br.norm())) return false;
    }
  }
  return true;
}

LieAlgebraSpan lie_algebra_closure(const std::vector<Matrix>& generators, double rank_tol) {
  if (generators.empty()) return LieAlgebraSpan(0);
  const Eigen::Index n = generators.front().rows();
  LieAlgebraSpan span(static_cast<int>(n));
  for (const auto& x : generators) {
    if (x.rows() != n || x.cols() != n || !x.allFinite()) {
      throw Error(ErrorKind::DimensionError, "generators must be finite matrices of one size");
    }
    if (std::abs(x.trace()) > 1e-12 * std::max(1.0, x.norm())) {
      throw Error(ErrorKind::InvalidElement, "generator is not traceless");
    }
    span.insert(x, rank_tol);
  }
  // Bracket every pair until a full sweep adds nothing; the dimension is
  // bounded by n^2 - 1.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t dim = span.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        const Matrix br = bracket(span.basis()[i], span.basis()[j]);
        grew = span.insert(br, rank_tol) || grew;
      }
    }
  }
  return span;
}

std::vector<std::size_t> lower_central_series(const LieAlgebraSpan& span, double rank_tol) {
  if (!span.is_closed(rank_tol)) throw Error(ErrorKind::NotAnAlgebra, "span is not bracket-closed");
  std::vector<std::size_t> dims{span.dimension()};
  LieAlgebraSpan current = span;
  while (current.dimension() > 0) {
    LieAlgebraSpan next(span.matrix_size());
    for (const auto& x : span.basis()) {
      for (const auto& y : current.basis()) next.insert(bracket(x, y), rank_tol);
    }
    dims.push_back(next.dimension());
    if (next.dimension() == current.dimension()) break;
    current = std::move(next);
  }
  return dims;
}

bool is_nilpotent_algebra(const LieAlgebraSpan& span, double rank_tol) {
  return lower_central_series(span, rank_tol).back() == 0;
}

Matrix log_na(const Matrix& t, const Tolerances& tol) {
  if (!is_square_finite(t) || !lower_part_negligible(t, tol.structural) ||
      !(t.diagonal().array() > 0).all()) {
    throw Error(ErrorKind::NotInNA, "expected an upper triangular matrix with positive diagonal");
  }
  const Eigen::Index n = t.rows();
  Matrix x = t.triangularView<Eigen::Upper>();
  const Matrix id = Matrix::Identity(n, n);

  // Square roots until close to the identity; the triangular square root
  // with positive diagonal is the principal one.
  int squarings = 0;
  while ((x - id).lpNorm<Eigen::Infinity>() * static_cast<double>(n) > 0.25 && squarings < 100) {
    Matrix r = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) r(i, i) = std::sqrt(x(i, i));
    for (Eigen::Index d = 1; d < n; ++d) {
      for (Eigen::Index i = 0; i + d < n; ++i) {
        const Eigen::Index j = i + d;
        double s = x(i, j);
        for (Eigen::Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
        r(i, j) = s / (r(i, i) + r(j, j));
      }
    }
    x = std::move(r);
    ++squarings;
  }

  // log x = 2 atanh(z), z = (x - I)(x + I)^-1.
  const Matrix z = (x + id).triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(x - id);
  const Matrix z2 = z * z;
  Matrix term = z;
  Matrix sum = z;
  for (int k = 1; k < 200; ++k) {
    term = term * z2;
    const Matrix add = term / static_cast<double>(2 * k + 1);
    sum += add;
    if (add.norm() <= 1e-18 * std::max(1.0, sum.norm())) break;
  }
  Matrix log = 2.0 * std::ldexp(1.0, squarings) * sum;
  return log.triangularView<Eigen::Upper>();
}

SteinReport stein_quotient_report(const std::vector<Matrix>& generators, const Tolerances& tol) {
  SteinReport report;
  for (const auto& g : generators) report.logs.push_back(log_na(g, tol));
  if (report.logs.empty()) {
    report.central_series = {0};
    report.nilpotent = true;
    return report;
  }
  // Traceless part: log of a det-1 element is traceless; tolerate det drift.
  for (auto& l : report.logs) {
    if (std::abs(l.trace()) > tol.residual * std::max(1.0, l.norm())) {
      throw Error(ErrorKind::NotInNA, "generator is not unimodular");
    }
    l.diagonal().array() -= l.trace() / static_cast<double>(l.rows());
  }
  const LieAlgebraSpan span = lie_algebra_closure(report.logs, tol.residual);
  report.closure_dimension = span.dimension();
  report.central_series = lower_central_series(span, tol.residual);
  report.nilpotent = report.central_series.back() == 0;
  return report;
}

bool stein_quotient_predicate(const std::vector<Matrix>& generators, const Tolerances& tol) {
  return stein_quotient_report(generators, tol).nilpotent;
}

std::vector<Matrix> root_ordered_basis(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidRank, "sl(n) needs n >= 2");
  std::vector<Matrix> basis;
  auto unit = [n](int i, int j) {
    Matrix e = Matrix::Zero(n, n);
    e(i, j) = 1.0;
    return e;
  };
  for (int height = n - 1; height >= 1; --height) {
    for (int k = 0; k + height < n; ++k) basis.push_back(unit(k, k + height));
  }
  for (int i = 0; i + 1 < n; ++i) {
    Matrix h = Matrix::Zero(n, n);
    h(i, i) = 1.0;
    h(i + 1, i + 1) = -1.0;
    basis.push_back(std::move(h));
  }
  for (int height = 1; height <= n - 1; ++height) {
    for (int k = 0; k + height < n; ++k) basis.push_back(unit(k + height, k));
  }
  return basis;
}

Eigen::VectorXd root_basis_coordinates(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::VectorXd c(n * n - 1);
  Eigen::Index idx = 0;
  for (int height = n - 1; height >= 1; --height) {
    for (int k = 0; k + height < n; ++k) c(idx++) = x(k, k + height);
  }
  double running = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    running += x(i, i);
    c(idx++) = running;
  }
  for (int height = 1; height <= n - 1; ++height) {
    for (int k = 0; k + height < n; ++k) c(idx++) = x(k + height, k);
  }
  return c;
}

Matrix adjoint_matrix(const Matrix& x) {
  const auto basis = root_ordered_basis(static_cast<int>(x.rows()));
  Matrix ad(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    ad.col(static_cast<Eigen::Index>(j)) = root_basis_coordinates(bracket(x, basis[j]));
  }
  return ad;
}

Matrix big_adjoint_matrix(const Matrix& g) {
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorKind::InvalidElement, "matrix is singular");
  const Matrix g_inv = lu.inverse();
  const auto basis = root_ordered_basis(static_cast<int>(g.rows()));
  Matrix ad(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    ad.col(static_cast<Eigen::Index>(j)) = root_basis_coordinates(g * basis[j] * g_inv);
  }
  return ad;
}

}  // namespace crownlab::decomp
