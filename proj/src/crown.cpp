#include "crownlab/crown.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "crownlab/error.hpp"
#include "crownlab/rootsys.hpp"

namespace crownlab::crown {

namespace {

constexpr double kPi = std::numbers::pi;

const rootsys::RootSystem& sl3() {
  static const rootsys::RootSystem rs = rootsys::restricted_roots_sl(3);
  return rs;
}

const rootsys::CrownCell& sl3_cell() {
  static const rootsys::CrownCell cell = rootsys::crown_cell(sl3());
  return cell;
}

// Principal argument in (-pi, pi].
double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

bool in_cell(const Eigen::Vector3d& lambda) { return rootsys::cell_contains(sl3_cell(), lambda); }

void require_na_chart(const Eigen::Matrix3d& g) {
  if (!g.allFinite()) throw Error(ErrorKind::NotInNA, "non-finite matrix");
  for (int i = 0; i < 3; ++i) {
    if (!(g(i, i) > 0)) throw Error(ErrorKind::NotInNA, "diagonal entries must be positive");
    for (int j = 0; j < i; ++j) {
      if (std::abs(g(i, j)) > 1e-12 * std::max(1.0, g.norm())) {
        throw Error(ErrorKind::NotInNA, "matrix is not upper triangular");
      }
    }
  }
}

}  // namespace

Eigen::Vector3d tube_arguments(const TubeCoordinates& tc) {
  Eigen::Vector3d theta;
  for (int k = 0; k < 3; ++k) theta(k) = principal_arg(tc.zeta[k]);
  // Lift by multiples of 2 pi to a traceless vector, preferring the lift
  // with the smallest max-norm.
  Eigen::Vector3d best = theta;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) {
        Eigen::Vector3d lift = theta + 2 * kPi * Eigen::Vector3d(a, b, c);
        if (std::abs(lift.sum()) > 1e-9) continue;
        const double norm = lift.cwiseAbs().maxCoeff();
        if (norm < best_norm) {
          best_norm = norm;
          best = lift;
        }
      }
    }
  }
  best.array() -= best.sum() / 3.0;
  return best;
}

bool in_tube_cell(const TubeCoordinates& tc) { return in_cell(tube_arguments(tc)); }

ComplexMatrix3 na_matrix(const TubeCoordinates& tc) {
  ComplexMatrix3 n = ComplexMatrix3::Identity();
  n(0, 1) = tc.alpha;
  n(0, 2) = tc.beta;
  n(1, 2) = tc.gamma;
  return n * Eigen::Vector3cd(tc.zeta[0], tc.zeta[1], tc.zeta[2]).asDiagonal();
}

SymPoint::SymPoint(const ComplexMatrix3& m) {
  if (!m.allFinite()) throw Error(ErrorKind::InvalidCoordinates, "non-finite matrix");
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (m(i, j) != m(j, i)) throw Error(ErrorKind::InvalidCoordinates, "matrix is not symmetric");
    }
  }
  const Complex det = m.determinant();
  if (!(std::abs(det - 1.0) <= 1e-9)) {
    throw Error(ErrorKind::InvalidCoordinates,
                fmt::format("determinant {}{:+}i is not 1", det.real(), det.imag()));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) upper_[index(i, j)] = m(i, j);
  }
}

ComplexMatrix3 SymPoint::matrix() const {
  ComplexMatrix3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

SymPoint embed_tube(const TubeCoordinates& tc) {
  const auto& [z1, z2, z3] = tc.zeta;
  if (!(std::abs(z1 * z2 * z3 - 1.0) <= 1e-12)) {
    throw Error(ErrorKind::InvalidCoordinates, "zeta_1 zeta_2 zeta_3 must equal 1");
  }
  const Complex s1 = z1 * z1;
  const Complex s2 = z2 * z2;
  const Complex s3 = z3 * z3;
  const Complex a = tc.alpha;
  const Complex b = tc.beta;
  const Complex c = tc.gamma;
  ComplexMatrix3 m;
  m(0, 0) = s1 + a * a * s2 + b * b * s3;
  m(0, 1) = m(1, 0) = a * s2 + c * b * s3;
  m(0, 2) = m(2, 0) = b * s3;
  m(1, 1) = s2 + c * c * s3;
  m(1, 2) = m(2, 1) = c * s3;
  m(2, 2) = s3;
  return SymPoint(m);
}

EReport in_tube_E(const SymPoint& s) {
  EReport report;
  const Complex a33 = s(2, 2);
  const Complex d = s(1, 1) * a33 - s(1, 2) * s(1, 2);
  if (!(std::abs(a33) > kPivotTolerance) || !(std::abs(d) > kPivotTolerance)) {
    report.failed_conditions.push_back(0);
    report.argument_values.fill(std::numeric_limits<double>::quiet_NaN());
    return report;
  }
  report.argument_values = {principal_arg(d * d / a33), principal_arg(a33 * d),
                            principal_arg(d / (a33 * a33))};
  for (int i = 0; i < 3; ++i) {
    if (!(std::abs(report.argument_values[i]) < kPi)) report.failed_conditions.push_back(i + 1);
  }
  report.member = report.failed_conditions.empty();
  return report;
}

TubeCoordinates extract_tube(const SymPoint& s) {
  const Complex a33 = s(2, 2);
  const Complex d = s(1, 1) * a33 - s(1, 2) * s(1, 2);
  if (!(std::abs(a33) > kPivotTolerance) || !(std::abs(d) > kPivotTolerance)) {
    throw Error(ErrorKind::DegeneratePivot, "a_33 or a_22 a_33 - a_23^2 vanishes");
  }
  const EReport report = in_tube_E(s);
  if (!report.member) throw Error(ErrorKind::NotInTube, "point violates the E conditions");

  const Complex zeta2_sq = d / a33;
  const double lambda2 = principal_arg(zeta2_sq) / 2;
  const double lambda3 = principal_arg(a33) / 2;
  // zeta_2 -> -zeta_2 and zeta_3 -> -zeta_3 shift the half-arguments by pi;
  // at most one shift lands in the cell since its pi-translates are disjoint.
  for (int l = -1; l <= 1; ++l) {
    for (int m = -1; m <= 1; ++m) {
      const double l2 = lambda2 + l * kPi;
      const double l3 = lambda3 + m * kPi;
      if (!in_cell(Eigen::Vector3d(-l2 - l3, l2, l3))) continue;
      TubeCoordinates tc;
      tc.zeta[1] = std::polar(std::sqrt(std::abs(zeta2_sq)), l2);
      tc.zeta[2] = std::polar(std::sqrt(std::abs(a33)), l3);
      tc.zeta[0] = 1.0 / (tc.zeta[1] * tc.zeta[2]);
      tc.gamma = s(1, 2) / a33;
      tc.beta = s(0, 2) / a33;
      tc.alpha = (s(0, 1) * a33 - s(1, 2) * s(0, 2)) / d;
      return tc;
    }
  }
  throw Error(ErrorKind::NotInTube, "no square-root branch puts the half-arguments in the cell");
}

int phi_jacobian_rank(const Eigen::Vector3cd& diagonal, double threshold) {
  if (!diagonal.allFinite() || (diagonal.array().abs() == 0.0).any()) {
    throw Error(ErrorKind::InvalidCoordinates, "diagonal entries must be nonzero");
  }
  if (!(std::abs(diagonal.prod() - 1.0) <= 1e-10)) {
    throw Error(ErrorKind::InvalidCoordinates, "diagonal must have determinant 1");
  }
  auto unit = [](int i, int j) {
    ComplexMatrix3 e = ComplexMatrix3::Zero();
    e(i, j) = 1.0;
    return e;
  };
  const std::vector<ComplexMatrix3> nilpotent{unit(0, 1), unit(0, 2), unit(1, 2)};
  const std::vector<ComplexMatrix3> cartan{unit(0, 0) - unit(1, 1), unit(1, 1) - unit(2, 2)};
  const std::vector<ComplexMatrix3> compact{unit(0, 1) - unit(1, 0), unit(0, 2) - unit(2, 0),
                                            unit(1, 2) - unit(2, 1)};
  const ComplexMatrix3 a = diagonal.asDiagonal();
  const ComplexMatrix3 a_inv = diagonal.cwiseInverse().asDiagonal();

  std::vector<ComplexMatrix3> images;
  for (const auto& x : nilpotent) images.push_back(a_inv * x * a);
  for (const auto& y : cartan) images.push_back(y);
  for (const auto& z : compact) images.push_back(z);

  const Complex i_unit(0.0, 1.0);
  Eigen::MatrixXd jac(18, 2 * static_cast<Eigen::Index>(images.size()));
  Eigen::Index col = 0;
  for (const auto& img : images) {
    for (const Complex scale : {Complex(1.0), i_unit}) {
      const ComplexMatrix3 v = scale * img;
      for (int e = 0; e < 9; ++e) {
        jac(2 * e, col) = v(e / 3, e % 3).real();
        jac(2 * e + 1, col) = v(e / 3, e % 3).imag();
      }
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  const double cut = threshold * sv(0);
  return static_cast<int>((sv.array() > cut).count());
}

Eigen::Vector3d slice_point(const SymPoint& s) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(s(i, j)) > 1e-10) throw Error(ErrorKind::NotOnSlice, "point is not diagonal");
    }
    if (std::abs(std::abs(s(i, i)) - 1.0) > 1e-10) {
      throw Error(ErrorKind::NotOnSlice, "diagonal entries must have modulus 1");
    }
  }
  Eigen::Vector3d half;
  for (int i = 0; i < 3; ++i) half(i) = principal_arg(s(i, i)) / 2;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) {
        Eigen::Vector3d xi = half + kPi * Eigen::Vector3d(a, b, c);
        if (std::abs(xi.sum()) > 1e-9) continue;
        xi.array() -= xi.sum() / 3.0;
        if (in_cell(xi)) return xi;
      }
    }
  }
  throw Error(ErrorKind::NotOnSlice, "no branch of the half-arguments lies in the cell");
}

double slice_exhaustion(const SymPoint& s) { return rootsys::exhaustion_u(sl3(), slice_point(s)); }

TubeCoordinates act_na(const Eigen::Matrix3d& g, const TubeCoordinates& tc) {
  require_na_chart(g);
  const Eigen::Vector3d a_prime = g.diagonal();
  const Eigen::Matrix3d n_prime = g * a_prime.cwiseInverse().asDiagonal();

  ComplexMatrix3 n = ComplexMatrix3::Identity();
  n(0, 1) = tc.alpha;
  n(0, 2) = tc.beta;
  n(1, 2) = tc.gamma;
  const ComplexMatrix3 conj = a_prime.cast<Complex>().asDiagonal() * n *
                              a_prime.cwiseInverse().cast<Complex>().asDiagonal();
  const ComplexMatrix3 product = n_prime.cast<Complex>() * conj;

  TubeCoordinates out;
  out.alpha = product(0, 1);
  out.beta = product(0, 2);
  out.gamma = product(1, 2);
  for (int k = 0; k < 3; ++k) out.zeta[k] = a_prime(k) * tc.zeta[k];
  return out;
}

double coordinate_distance(const TubeCoordinates& a, const TubeCoordinates& b) {
  const double unipotent = std::sqrt(std::norm(a.alpha - b.alpha) + std::norm(a.beta - b.beta) +
                                     std::norm(a.gamma - b.gamma));
  double diag = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double dl = std::log(std::abs(a.zeta[k])) - std::log(std::abs(b.zeta[k]));
    const double da = principal_arg(a.zeta[k]) - principal_arg(b.zeta[k]);
    diag += dl * dl + da * da;
  }
  return std::max(unipotent, std::sqrt(diag));
}

OrbitReport orbit_escape_check(const Eigen::Matrix3d& gamma, const TubeCoordinates& start,
                               double radius, int kmax) {
  if (kmax < 1) throw Error(ErrorKind::OutOfRange, "kmax must be at least 1");
  require_na_chart(gamma);
  if ((gamma - Eigen::Matrix3d::Identity()).norm() <= 1e-12) {
    throw Error(ErrorKind::DegenerateAction, "gamma is the identity");
  }
  const Eigen::Matrix3d inverse = gamma.triangularView<Eigen::Upper>().solve(Eigen::Matrix3d::Identity());

  OrbitReport report;
  TubeCoordinates forward = start;
  TubeCoordinates backward = start;
  for (int k = 1; k <= kmax; ++k) {
    forward = act_na(gamma, forward);
    backward = act_na(inverse, backward);
    report.steps.push_back({k, coordinate_distance(forward, start), coordinate_distance(backward, start)});
  }
  int first = kmax + 1;
  for (int k = kmax; k >= 1; --k) {
    const auto& step = report.steps[k - 1];
    if (step.forward_distance > radius && step.backward_distance > radius) {
      first = k;
    } else {
      break;
    }
  }
  report.escaped = first <= kmax;
  report.escape_index = report.escaped ? first : 0;
  return report;
}

}  // namespace crownlab::crown
