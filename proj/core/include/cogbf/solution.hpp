// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace cogbf {

enum class BeamformingMode { kZeroForcing, kNonzeroForcing };

/// A transmit beamformer together with the quantities it achieves.
/// The transmit matrix always has the Lemma-style factored form
/// T = E^{-1/2} V S^{1/2} with V on the Stiefel manifold and S the
/// diagonal SNR-target matrix, so T^H E T is diagonal and per-stream
/// targets are met exactly up to round-off.
struct BeamformingSolution {
  Eigen::MatrixXcd transmit;   // st_antennas x streams
  Eigen::MatrixXcd stiefel;    // st_antennas x streams, orthonormal columns
  double multiplier = 0.0;     // dual price on the interference constraint
  bool multiplier_defined = false;  // false in zero-forcing mode
  double power = 0.0;          // tr(T^H T)
  double interference = 0.0;   // leakage power at the primary receiver
  Eigen::VectorXd stream_snr;  // achieved per-stream SNRs, descending
  BeamformingMode mode = BeamformingMode::kNonzeroForcing;
  // Set when the dual bisection stopped on interval width instead of the
  // interference tolerance (an eigenvalue-crossing stall); the solution
  // is still the best feasible point found.
  bool stalled = false;
};

inline const char* mode_name(BeamformingMode mode) {
  return mode == BeamformingMode::kZeroForcing ? "ZFB" : "NFB";
}

}  // namespace cogbf
