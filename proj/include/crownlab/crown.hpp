#pragma once

// Explicit realization of the tube N^C T_omega . I for SL(3,R)/SO(3) inside
// the complex unimodular symmetric 3x3 matrices.
//
// A point of the tube is written n a . I with
//
//       | 1  alpha  beta  |
//   n = | 0    1    gamma |,   a = diag(zeta_1, zeta_2, zeta_3),  zeta_1 zeta_2 zeta_3 = 1,
//       | 0    0      1   |
//
// and n a . I = M M^T for M = n a (the entry formulas of the realization are
// those of M M^T). The inverse map reads the coordinates back from the
// entries a_33, a_23, a_13, a_22 a_33 - a_23^2, ...; the square roots are
// fixed by requiring the half-argument vector to lie in the crown cell.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "crownlab/decomp.hpp"

namespace crownlab::crown {

using Complex = std::complex<double>;
using ComplexMatrix3 = Eigen::Matrix3cd;

struct TubeCoordinates {
  Complex alpha{0.0};
  Complex beta{0.0};
  Complex gamma{0.0};
  std::array<Complex, 3> zeta{Complex(1.0), Complex(1.0), Complex(1.0)};
};

/// Argument vector (arg zeta_k) lifted by multiples of 2pi to sum zero,
/// taking the lift of smallest max-norm.
Eigen::Vector3d tube_arguments(const TubeCoordinates& tc);

/// True when zeta lies in T_omega: the argument vector is in the crown cell.
bool in_tube_cell(const TubeCoordinates& tc);

/// n * diag(zeta) as a complex matrix.
ComplexMatrix3 na_matrix(const TubeCoordinates& tc);

/// Complex symmetric 3x3 matrix with det 1, stored as its upper triangle.
class SymPoint {
 public:
  SymPoint() : SymPoint(ComplexMatrix3::Identity()) {}
  /// Throws InvalidCoordinates unless m is exactly symmetric with
  /// |det m - 1| <= 1e-9.
  explicit SymPoint(const ComplexMatrix3& m);

  Complex operator()(int i, int j) const { return i <= j ? upper_[index(i, j)] : upper_[index(j, i)]; }
  ComplexMatrix3 matrix() const;

 private:
  static int index(int i, int j) { return i * 3 - i * (i - 1) / 2 + (j - i); }
  std::array<Complex, 6> upper_{};
};

/// Throws InvalidCoordinates when |zeta_1 zeta_2 zeta_3 - 1| > 1e-12.
SymPoint embed_tube(const TubeCoordinates& tc);

struct EReport {
  bool member = false;
  /// 0: a_33 != 0 and a_22 a_33 - a_23^2 != 0;
  /// 1: |arg(a_33^-1 D^2)| < pi; 2: |arg(a_33 D)| < pi; 3: |arg(a_33^-2 D)| < pi
  /// where D = a_22 a_33 - a_23^2.
  std::vector<int> failed_conditions;
  /// The three arguments in (-pi, pi]; NaN when group 0 fails.
  std::array<double, 3> argument_values{};
};

/// Modulus under which a_33 or D counts as vanishing.
inline constexpr double kPivotTolerance = 1e-12;

EReport in_tube_E(const SymPoint& s);

/// Inverse of embed_tube. Throws NotInTube when the E conditions fail or no
/// square-root branch puts the half-arguments in the crown cell, and
/// DegeneratePivot when a_33 or D nearly vanishes.
TubeCoordinates extract_tube(const SymPoint& s);

/// Real rank of (X, Y, Z) -> Ad(a^-1) X + Y + Z on n^C + a^C + k^C for a
/// complex diagonal a = diag(d) with det 1. Throws InvalidCoordinates for
/// singular or non-unimodular a.
int phi_jacobian_rank(const Eigen::Vector3cd& diagonal, double threshold = 1e-10);

/// Recovers xi in omega from a slice point exp(2 i xi) and returns u(xi).
/// Throws NotOnSlice when s is not diagonal with unit-modulus entries or no
/// branch lies in the cell.
double slice_exhaustion(const SymPoint& s);
/// The recovered xi (radians, traceless, in the cell).
Eigen::Vector3d slice_point(const SymPoint& s);

/// (n', a') . (n, a) = (n' a' n a'^-1, a' a) for g = n' a' real in NA.
TubeCoordinates act_na(const Eigen::Matrix3d& g, const TubeCoordinates& tc);

struct OrbitStep {
  int k = 0;
  double forward_distance = 0.0;   // distance of g^k . start from start
  double backward_distance = 0.0;  // distance of g^-k . start from start
};

struct OrbitReport {
  std::vector<OrbitStep> steps;
  bool escaped = false;
  /// First k such that every orbit point with index >= k (up to kmax, both
  /// directions) is outside the ball; 0 when not escaped.
  int escape_index = 0;
};

/// max of the Euclidean distances on (alpha, beta, gamma) and on
/// (log|zeta_k|, arg zeta_k).
double coordinate_distance(const TubeCoordinates& a, const TubeCoordinates& b);

/// Desk-scale evidence that the cyclic NA-action generated by gamma leaves
/// every ball. Throws DegenerateAction for gamma = I and NotInNA outside the
/// triangular chart.
OrbitReport orbit_escape_check(const Eigen::Matrix3d& gamma, const TubeCoordinates& start,
                               double radius, int kmax);

}  // namespace crownlab::crown
