// SPDX-License-Identifier: Apache-2.0
#include "cogbf/zfb.hpp"

#include <string>

#include "cogbf/errors.hpp"

namespace cogbf {

ZfbDecomposition zfb_decompose(const DerivedModel& model) {
  const int pr = numerical_rank(model.cross_evd);  // whitened leakage rank
  const int rank = model.effective_rank;

  if (pr >= rank)
    throw InsufficientNullSpace(
        "zfb: no interference-free dimensions (leakage rank " +
        std::to_string(pr) + " >= usable rank " + std::to_string(rank) + ")");

  // Everything happens on range(effective_gram), where the pseudoinverse
  // is an honest inverse: diag(1/mu) in the eigenbasis.
  const Eigen::MatrixXcd basis = model.range_basis();  // st x rank
  const Eigen::MatrixXcd cross_reduced =
      symmetrized(basis.adjoint() * model.cross_gram * basis);
  const HermitianEvd cross_evd = hermitian_evd(cross_reduced);
  if (numerical_rank(cross_evd) != pr)
    throw RankError("zfb: whitened leakage row space is rank deficient");

  ZfbDecomposition out;
  out.whitened_row_basis =
      (basis * cross_evd.eigenvectors.leftCols(pr)).adjoint();

  // The unwhitened leakage row space, recovered from the signal-domain
  // Gram; recorded for diagnostics, the solve path never touches it.
  const Eigen::MatrixXcd sqrt_gram = psd_power(model.effective_evd, 0.5);
  const HermitianEvd leakage_evd =
      hermitian_evd(sqrt_gram * model.cross_gram * sqrt_gram);
  out.cross_row_basis = leakage_evd.eigenvectors.leftCols(pr).adjoint();

  Eigen::MatrixXcd inv_gram = Eigen::MatrixXcd::Zero(rank, rank);
  for (int i = 0; i < rank; ++i)
    inv_gram(i, i) = 1.0 / model.effective_evd.eigenvalues[i];
  const Eigen::MatrixXcd projector =
      Eigen::MatrixXcd::Identity(rank, rank) -
      cross_evd.eigenvectors.leftCols(pr) *
          cross_evd.eigenvectors.leftCols(pr).adjoint();
  const Eigen::MatrixXcd cost_reduced =
      symmetrized(projector * inv_gram * projector);

  const HermitianEvd cost_evd = hermitian_evd(cost_reduced);
  const Eigen::Index spare = rank - pr;
  if (numerical_rank(cost_evd) != spare)
    throw RankError("zfb: interference-free cost form has unexpected rank");

  // Positive eigenvalues sit at the top of the descending order; flip to
  // ascending so the cheapest direction comes first.
  out.null_costs = cost_evd.eigenvalues.head(spare).reverse();
  out.null_basis =
      basis * cost_evd.eigenvectors.leftCols(spare).rowwise().reverse();
  out.null_cost_gram = symmetrized(basis * cost_reduced * basis.adjoint());
  return out;
}

BeamformingSolution solve_zfb(const DerivedModel& model, const SnrMatrix& snr) {
  const int st = static_cast<int>(model.antennas());
  const int pr = numerical_rank(model.cross_evd);
  const int streams = snr.streams();
  if (st - pr < streams)
    throw InsufficientNullSpace(
        "zfb: need st_antennas - pr_antennas >= streams, have " +
        std::to_string(st) + " - " + std::to_string(pr) + " < " +
        std::to_string(streams));
  if (streams > model.effective_rank)
    throw RankError("zfb: streams exceed effective channel rank");

  const ZfbDecomposition decomposition = zfb_decompose(model);
  if (decomposition.null_costs.size() < streams)
    throw RankError("zfb: effective channel rank leaves too few spare dimensions");

  BeamformingSolution solution;
  solution.mode = BeamformingMode::kZeroForcing;
  solution.multiplier_defined = false;
  solution.stiefel = decomposition.null_basis.leftCols(streams);
  const Eigen::VectorXcd amplitudes =
      snr.sqrt_vector().cast<std::complex<double>>();
  solution.transmit =
      model.effective_inv_sqrt * solution.stiefel * amplitudes.asDiagonal();
  solution.power = (solution.transmit.adjoint() * solution.transmit)
                       .trace()
                       .real();
  // Squared-norm form: nonnegative by construction, and accurate at the
  // near-zero leakage this solver produces.
  const Eigen::MatrixXcd cross_sqrt = psd_power(model.cross_evd, 0.5);
  double interference = 0.0;
  for (int i = 0; i < streams; ++i)
    interference +=
        snr[i] * (cross_sqrt * solution.stiefel.col(i)).squaredNorm();
  solution.interference = interference;
  solution.stream_snr =
      hermitian_evd(solution.transmit.adjoint() * model.effective_gram *
                    solution.transmit)
          .eigenvalues;
  return solution;
}

std::vector<int> zfb_q_family(const SnrMatrix& snr) {
  std::vector<int> blocks;
  int run = 1;
  for (int i = 1; i < snr.streams(); ++i) {
    if (snr[i] == snr[i - 1]) {
      ++run;
    } else {
      blocks.push_back(run);
      run = 1;
    }
  }
  blocks.push_back(run);
  return blocks;
}

}  // namespace cogbf
