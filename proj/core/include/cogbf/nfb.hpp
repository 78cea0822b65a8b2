// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <utility>

#include "cogbf/derived.hpp"
#include "cogbf/scenario.hpp"
#include "cogbf/solution.hpp"

namespace cogbf {

/// Eigen-structure of the dual-weighted form
/// effective_gram^{-1} + multiplier * cross_gram, restricted to the range
/// of the effective Gram when it is singular.
struct DualEigenbasis {
  // The `streams` eigenvectors with smallest eigenvalues, orthonormal;
  // column i pairs with eigenvalues[i].
  Eigen::MatrixXcd stiefel;
  // Full usable spectrum, ascending (effective_rank entries).
  Eigen::VectorXd eigenvalues;
};

/// Minimizer of the Lagrangian at a fixed multiplier: the d cheapest
/// eigenvectors, largest SNR target on the smallest eigenvalue.
DualEigenbasis dual_eigenbasis(const DerivedModel& model, const SnrMatrix& snr,
                               double multiplier);

/// Transmit power and leakage interference achieved by the minimizer at
/// a given multiplier. Power is non-decreasing and interference
/// non-increasing in the multiplier, which is what the bisection in
/// solve_nfb relies on.
std::pair<double, double> power_and_interference_at(const DerivedModel& model,
                                                    const SnrMatrix& snr,
                                                    double multiplier);

/// Dual objective: sum of target-weighted smallest eigenvalues minus
/// multiplier * interference_cap. A lower bound on the primal power for
/// every nonnegative multiplier; tight at the returned solution.
double dual_value(const DerivedModel& model, const SnrMatrix& snr,
                  double multiplier, double interference_cap);

/// Minimum-power beamformer under a nonzero interference cap, found on
/// the dual: if the cap is slack at multiplier 0 the constraint is
/// inactive; otherwise bracket (geometric expansion) and bisect the
/// monotone interference curve, returning the minimum feasible
/// multiplier's solution. Throws InfeasibleError (carrying the minimum
/// achievable interference) when the cap is below it, and ToleranceError
/// when no bracket exists below multiplier 1e12.
BeamformingSolution solve_nfb(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap);

/// Power with the interference constraint dropped (the cap -> infinity
/// limit): each target rides its own top channel mode, largest target on
/// the strongest mode.
double lower_bound_power(const DerivedModel& model, const SnrMatrix& snr);

}  // namespace cogbf
