// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace cogbf {

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order; column i of `eigenvectors` pairs with
/// `eigenvalues[i]`. Every consumer in this library receives descending
/// order and reverses locally where ascending order is needed.
struct HermitianEvd {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

/// (A + A^H) / 2. Applied before every eigendecomposition to remove
/// round-off asymmetry.
Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& matrix);

/// Decomposes a (nearly) Hermitian matrix; symmetrizes first.
/// Throws NumericalFailure if the eigensolver does not converge.
HermitianEvd hermitian_evd(const Eigen::MatrixXcd& matrix);

/// Numerical-rank cutoff: an eigenvalue counts as zero iff
/// lambda <= dim * eps * max|lambda|.
double rank_tolerance(const HermitianEvd& evd);

/// Number of eigenvalues above rank_tolerance(evd).
int numerical_rank(const HermitianEvd& evd);

/// A^exponent for Hermitian PSD A, computed on the nonzero eigenspace
/// only: eigenvalues at or below the rank tolerance are treated as exact
/// zeros, so exponent -1 is the Moore-Penrose pseudoinverse and -1/2 its
/// square root.
Eigen::MatrixXcd psd_power(const Eigen::MatrixXcd& matrix, double exponent);

/// Same, reusing an already computed decomposition.
Eigen::MatrixXcd psd_power(const HermitianEvd& evd, double exponent);

/// || V^H V - I ||_F. Zero exactly when V has orthonormal columns.
double stiefel_residual(const Eigen::MatrixXcd& columns);

/// Thin-QR orthonormalization: returns a matrix with the same column
/// span and orthonormal columns. Input must have full column rank.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& columns);

}  // namespace cogbf
