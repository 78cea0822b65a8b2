// SPDX-License-Identifier: Apache-2.0
#include "cogbf/linalg.hpp"

#include <cmath>
#include <limits>

#include "cogbf/errors.hpp"

namespace cogbf {

Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& matrix) {
  return 0.5 * (matrix + matrix.adjoint());
}

HermitianEvd hermitian_evd(const Eigen::MatrixXcd& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetrized(matrix));
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("hermitian_evd: eigensolver did not converge");
  // Eigen returns ascending order; flip to the library-wide descending
  // convention.
  HermitianEvd out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double rank_tolerance(const HermitianEvd& evd) {
  const double largest = evd.eigenvalues.size() == 0
                             ? 0.0
                             : evd.eigenvalues.cwiseAbs().maxCoeff();
  return static_cast<double>(evd.dim()) *
         std::numeric_limits<double>::epsilon() * largest;
}

int numerical_rank(const HermitianEvd& evd) {
  const double tol = rank_tolerance(evd);
  int rank = 0;
  for (Eigen::Index i = 0; i < evd.eigenvalues.size(); ++i)
    if (evd.eigenvalues[i] > tol) ++rank;
  return rank;
}

Eigen::MatrixXcd psd_power(const HermitianEvd& evd, double exponent) {
  const double tol = rank_tolerance(evd);
  Eigen::VectorXd powered = Eigen::VectorXd::Zero(evd.dim());
  for (Eigen::Index i = 0; i < evd.dim(); ++i) {
    const double lambda = evd.eigenvalues[i];
    if (lambda > tol) powered[i] = std::pow(lambda, exponent);
  }
  return symmetrized(evd.eigenvectors * powered.asDiagonal() *
                     evd.eigenvectors.adjoint());
}

Eigen::MatrixXcd psd_power(const Eigen::MatrixXcd& matrix, double exponent) {
  return psd_power(hermitian_evd(matrix), exponent);
}

double stiefel_residual(const Eigen::MatrixXcd& columns) {
  const Eigen::Index width = columns.cols();
  return (columns.adjoint() * columns -
          Eigen::MatrixXcd::Identity(width, width))
      .norm();
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& columns) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(columns);
  Eigen::MatrixXcd thin_q =
      qr.householderQ() *
      Eigen::MatrixXcd::Identity(columns.rows(), columns.cols());
  return thin_q;
}

}  // namespace cogbf
