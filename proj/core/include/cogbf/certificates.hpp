// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "cogbf/derived.hpp"
#include "cogbf/scenario.hpp"

namespace cogbf {

/// Per-stream SNR achieved after optimal receive beamforming, computed
/// the long way round: for each stream the other streams count as
/// interference, and the best receive vector is the dominant eigenvector
/// of the whitened rank-one signal form. Returns the achieved SNRs in
/// descending order; when `receive_vectors` is non-null its rows get the
/// maximizing receive vectors in the same order. Serves as an
/// independent check on the solvers, which never go through this path.
Eigen::VectorXd receive_snr(const Eigen::MatrixXcd& transmit,
                            const Eigen::MatrixXcd& st_to_sr,
                            const Eigen::MatrixXcd& noise_cov,
                            Eigen::MatrixXcd* receive_vectors = nullptr);

/// Primal-dual certificate for a single-stream solve: the semidefinite
/// relaxation is convex, so a matching dual value plus small
/// complementary residuals certify global optimality of the dual-based
/// solver's answer.
struct KktReport {
  double mu1 = 0.0;  // multiplier on the interference constraint, >= 0
  double mu2 = 0.0;  // multiplier on the SNR equality constraint
  double dual_value = 0.0;
  double primal_value = 0.0;
  double slack_interference = 0.0;  // cap - achieved interference
  double slack_snr = 0.0;           // achieved SNR - target
  double psd_min_eigenvalue = 0.0;  // of I + mu1*A - mu2*E at the optimum
  // |tr(X(I + mu1*A - mu2*E))|, |mu1*(tr(XA) - cap)|, |mu2*(tr(XE) - target)|
  std::array<double, 3> complementary_residuals{0.0, 0.0, 0.0};
};

/// Runs the single-stream solver, maximizes the concave 1-D dual (the
/// SNR multiplier rides the PSD boundary for each interference
/// multiplier) and evaluates the complementary conditions at the pair.
/// Throws InfeasibleError if the cap fails the access test and
/// ToleranceError if the certified gap exceeds 1e-4 relative.
KktReport sdp_dual_single_stream(const DerivedModel& model, double snr_target,
                                 double interference_cap);

struct OracleResult {
  double power = 0.0;
  Eigen::MatrixXcd stiefel;  // best feasible point found
};

/// Derivative-free upper bound on the minimum power: QR-orthonormalized
/// Gaussian restarts keep the best cap-respecting sample, then a
/// perturb/re-orthonormalize descent polishes it (scale halved from 0.5
/// down to 1e-9, 50 trials per scale). Intended for small instances.
/// Throws OracleNoFeasiblePoint when no restart satisfies the cap.
OracleResult oracle_min_power(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap, int restarts,
                              std::uint64_t seed = 0x5eedu);

/// Same search restricted to the interference-free subspace; used to
/// cross-check the closed-form zero-forcing solution.
OracleResult oracle_min_power_zero_forcing(const DerivedModel& model,
                                           const SnrMatrix& snr, int restarts,
                                           std::uint64_t seed = 0x5eedu);

}  // namespace cogbf
