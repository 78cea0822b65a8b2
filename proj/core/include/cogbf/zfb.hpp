// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cogbf/derived.hpp"
#include "cogbf/scenario.hpp"
#include "cogbf/solution.hpp"

namespace cogbf {

/// Subspace machinery behind the closed-form zero-forcing solution.
/// The transmit matrix must avoid the leakage row space entirely; what
/// remains is a trace minimization over the complement, solved by an
/// eigendecomposition of the power-cost form restricted to it.
struct ZfbDecomposition {
  // Orthonormal rows spanning the leakage channel's row space (q x st).
  Eigen::MatrixXcd cross_row_basis;
  // Orthonormal rows spanning the whitened leakage row space, i.e. the
  // directions a Stiefel factor must be orthogonal to (q x st).
  Eigen::MatrixXcd whitened_row_basis;
  // Power-cost quadratic form restricted to the interference-free
  // subspace (st x st, Hermitian PSD, rank = usable spare dimensions).
  Eigen::MatrixXcd null_cost_gram;
  // Orthonormal basis of that subspace, cheapest direction first
  // (st x spare).
  Eigen::MatrixXcd null_basis;
  // Its positive eigenvalues, ascending; cost per unit SNR in each
  // direction.
  Eigen::VectorXd null_costs;
};

/// Throws RankError when the whitened leakage row space does not have
/// full rank q, or when the effective channel cannot host the spare
/// dimensions; InsufficientNullSpace when q >= st_antennas.
ZfbDecomposition zfb_decompose(const DerivedModel& model);

/// Closed-form minimum-power zero-forcing beamformer: the d cheapest
/// interference-free directions get the d SNR targets, largest target on
/// the cheapest direction. Requires st_antennas - pr_antennas >= streams.
BeamformingSolution solve_zfb(const DerivedModel& model, const SnrMatrix& snr);

/// Partition of the streams into runs of equal SNR target. Any block
/// unitary mixing within a run (padded with zero rows up to the spare
/// dimension count) yields another optimizer with identical power and
/// interference; singleton blocks reduce to per-column phases.
std::vector<int> zfb_q_family(const SnrMatrix& snr);

}  // namespace cogbf
