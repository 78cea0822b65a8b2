// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "cogbf/channel.hpp"
#include "cogbf/linalg.hpp"
#include "cogbf/scenario.hpp"

namespace cogbf {

/// Matrices every solver consumes, built once per channel draw.
///
///   noise_cov      = primary_power * G G^H + I          (Hermitian PD, at SR)
///   effective_gram = H^H noise_cov^{-1} H               (whitened secondary Gram)
///   cross_gram     = E^{-1/2} Hx^H Hx E^{-1/2}          (whitened leakage Gram,
///                    E = effective_gram)
///
/// Eigendecompositions are cached with eigenvalues descending. Inverse
/// powers of the effective Gram follow the pseudoinverse convention: when
/// the Gram is rank deficient (more transmit than receive antennas) they
/// act on its range only, and solvers reject stream counts beyond
/// effective_rank.
struct DerivedModel {
  Eigen::MatrixXcd noise_cov;           // sr x sr
  Eigen::MatrixXcd effective_gram;      // st x st, Hermitian PSD
  Eigen::MatrixXcd cross_gram;          // st x st, Hermitian PSD
  HermitianEvd effective_evd;           // of effective_gram
  HermitianEvd cross_evd;               // of cross_gram
  Eigen::MatrixXcd effective_inv_sqrt;  // pseudoinverse square root
  Eigen::MatrixXcd effective_inv;       // pseudoinverse
  int effective_rank = 0;

  Eigen::Index antennas() const { return effective_gram.rows(); }

  /// Orthonormal basis of range(effective_gram): st x effective_rank.
  Eigen::MatrixXcd range_basis() const {
    return effective_evd.eigenvectors.leftCols(effective_rank);
  }
};

/// Builds the derived matrices; throws NumericalFailure on eigensolver
/// non-convergence and ConfigError on dimension mismatch.
DerivedModel build_derived(const ChannelSet& channels,
                           const ScenarioConfig& config);

}  // namespace cogbf
