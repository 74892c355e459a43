#pragma once

// Seeded generators for the randomized invariant suites.

#include <random>

#include <Eigen/Dense>

#include "crownlab/crown.hpp"
#include "crownlab/decomp.hpp"

namespace crownlab::sampling {

using Rng = std::mt19937_64;

/// Gaussian entries, sign-fixed and rescaled to det 1.
Eigen::MatrixXd random_sl(int n, Rng& rng);

/// Haar-like element of SO(n) from the QR factor of a Gaussian matrix.
Eigen::MatrixXd random_rotation(int n, Rng& rng);

/// Unit upper triangular with strict entries uniform in [-scale, scale].
Eigen::MatrixXd random_unipotent_upper(int n, Rng& rng, double scale = 1.0);

/// exp of a traceless diagonal with entries of magnitude up to `spread`.
Eigen::MatrixXd random_positive_diagonal(int n, Rng& rng, double spread = 1.0);

/// Invertible matrix with 2-norm condition number at most max_condition.
Eigen::MatrixXd random_conjugator(int n, Rng& rng, double max_condition = 30.0);

/// Argument vector uniform in shrink * omega (full coordinates, radians).
Eigen::Vector3d random_cell_point(Rng& rng, double shrink);

/// Coordinates with arguments in shrink * omega, moduli drawn in [1/4, 4]
/// and normalized to product 1, unipotent entries with parts in [-2, 2].
crown::TubeCoordinates random_tube_coordinates(Rng& rng, double shrink = 0.95);

/// Diagonal of A^C with det 1; arguments in 0.95 omega when in_cell, and
/// with some root value beyond pi/2 otherwise.
Eigen::Vector3cd random_complex_diagonal(Rng& rng, bool in_cell);

struct CommutingTriple {
  Eigen::MatrixXd unipotent;
  Eigen::MatrixXd hyperbolic;
  Eigen::MatrixXd elliptic;
  Eigen::MatrixXd product() const { return unipotent * hyperbolic * elliptic; }
};

/// Nontrivial commuting unipotent, hyperbolic and elliptic factors in
/// SL(n) for n = 3 or 4 (block models conjugated by a random matrix).
CommutingTriple random_commuting_triple(int n, Rng& rng);

}  // namespace crownlab::sampling
