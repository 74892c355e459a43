#include "crownlab/sampling.hpp"

#include <cmath>
#include <numbers>

#include "crownlab/error.hpp"
#include "crownlab/rootsys.hpp"

namespace crownlab::sampling {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Eigen::Matrix2d rotation2(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

const rootsys::CrownCell& sl3_cell() {
  static const rootsys::CrownCell cell = rootsys::crown_cell(rootsys::restricted_roots_sl(3));
  return cell;
}

}  // namespace

Eigen::MatrixXd random_sl(int n, Rng& rng) {
  for (;;) {
    Eigen::MatrixXd g = gaussian(n, n, rng);
    double det = g.determinant();
    if (std::abs(det) < 1e-3) continue;
    if (det < 0) {
      g.row(0) = -g.row(0);
      det = -det;
    }
    return g / std::pow(det, 1.0 / n);
  }
}

Eigen::MatrixXd random_rotation(int n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(n, n, rng));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

Eigen::MatrixXd random_unipotent_upper(int n, Rng& rng, double scale) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) u(i, j) = uniform(rng, -scale, scale);
  }
  return u;
}

Eigen::MatrixXd random_positive_diagonal(int n, Rng& rng, double spread) {
  Eigen::VectorXd logs(n);
  for (int i = 0; i < n; ++i) logs(i) = uniform(rng, -spread, spread);
  logs.array() -= logs.mean();
  return logs.array().exp().matrix().asDiagonal();
}

Eigen::MatrixXd random_conjugator(int n, Rng& rng, double max_condition) {
  for (;;) {
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) + 0.6 * gaussian(n, n, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 0 && sv(0) / sv(n - 1) <= max_condition) return h;
  }
}

Eigen::Vector3d random_cell_point(Rng& rng, double shrink) {
  // The closed cell sits in the chart box [-pi/3, pi/3]^2.
  for (;;) {
    const double l2 = uniform(rng, -kPi / 3, kPi / 3) * shrink;
    const double l3 = uniform(rng, -kPi / 3, kPi / 3) * shrink;
    const Eigen::Vector3d x(-l2 - l3, l2, l3);
    if (rootsys::cell_contains(sl3_cell(), Eigen::Vector3d(x / shrink))) return x;
  }
}

crown::TubeCoordinates random_tube_coordinates(Rng& rng, double shrink) {
  const Eigen::Vector3d lambda = random_cell_point(rng, shrink);
  Eigen::Vector3d log_rho;
  for (int k = 0; k < 3; ++k) log_rho(k) = uniform(rng, std::log(0.25), std::log(4.0));
  log_rho.array() -= log_rho.mean();
  crown::TubeCoordinates tc;
  for (int k = 0; k < 3; ++k) tc.zeta[k] = std::polar(std::exp(log_rho(k)), lambda(k));
  // Put the rounding of the product constraint on zeta_1.
  tc.zeta[0] = 1.0 / (tc.zeta[1] * tc.zeta[2]);
  auto entry = [&] { return crown::Complex(uniform(rng, -2, 2), uniform(rng, -2, 2)); };
  tc.alpha = entry();
  tc.beta = entry();
  tc.gamma = entry();
  return tc;
}

Eigen::Vector3cd random_complex_diagonal(Rng& rng, bool in_cell) {
  Eigen::Vector3d lambda;
  if (in_cell) {
    lambda = random_cell_point(rng, 0.95);
  } else {
    for (;;) {
      const double l2 = uniform(rng, -kPi, kPi);
      const double l3 = uniform(rng, -kPi, kPi);
      lambda = Eigen::Vector3d(-l2 - l3, l2, l3);
      if (!rootsys::cell_contains(sl3_cell(), lambda)) break;
    }
  }
  Eigen::Vector3d log_rho;
  for (int k = 0; k < 3; ++k) log_rho(k) = uniform(rng, -1.0, 1.0);
  log_rho.array() -= log_rho.mean();
  Eigen::Vector3cd d;
  for (int k = 0; k < 3; ++k) d(k) = std::polar(std::exp(log_rho(k)), lambda(k));
  d(0) = 1.0 / (d(1) * d(2));
  return d;
}

CommutingTriple random_commuting_triple(int n, Rng& rng) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
  const double shear = uniform(rng, 0.5, 2.0) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
  const double c = uniform(rng, 1.5, 3.0);
  if (n == 3) {
    // Jordan block on the first two coordinates, eigenvalue -c there.
    u(0, 1) = shear;
    h.diagonal() << c, c, 1.0 / (c * c);
    e.diagonal() << -1.0, -1.0, 1.0;
  } else if (n == 4) {
    u(0, 1) = shear;
    h.diagonal() << c, c, 1.0 / c, 1.0 / c;
    e.topLeftCorner(2, 2) = -Eigen::Matrix2d::Identity();
    e.bottomRightCorner(2, 2) = rotation2(uniform(rng, 0.3, 2.8));
  } else {
    throw Error(ErrorKind::DimensionError, "commuting triples are modelled for n = 3 and 4");
  }
  const Eigen::MatrixXd conj = random_conjugator(n, rng);
  const Eigen::MatrixXd conj_inv = conj.inverse();
  return {conj * u * conj_inv, conj * h * conj_inv, conj * e * conj_inv};
}

}  // namespace crownlab::sampling
