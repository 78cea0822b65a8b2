// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "cogbf/derived.hpp"
#include "cogbf/scenario.hpp"

namespace cogbf {

/// Outcome of the secondary-access test for one channel draw.
struct FeasibilityReport {
  double xi_min = 0.0;  // minimum achievable interference at the PR
  Eigen::VectorXd cross_eigenvalues;  // all st_antennas of them, descending,
                                      // clamped to 0 below the rank tolerance
  bool feasible = false;              // slack >= 0
  double slack = 0.0;                 // interference_cap - xi_min
};

/// Minimum interference over all beamformers meeting the SNR targets:
/// the largest target pairs with the smallest cross-gram eigenvalue on
/// the usable subspace. Zero (exactly, after clamping) whenever there
/// are at least `streams` spare transmit dimensions. Throws RankError
/// if more streams are requested than the effective channel supports.
double min_interference(const DerivedModel& model, const SnrMatrix& snr);

FeasibilityReport test_access(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap);

/// Fraction of `trials` i.i.d. channel draws whose minimum achievable
/// interference fits under config.interference_cap. Deterministic given
/// config.seed; trial t uses channel substream t.
double access_probability(const ScenarioConfig& config, int trials);

}  // namespace cogbf
