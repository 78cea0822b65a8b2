// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace cogbf {

/// Deterministic random stream. Substream `stream` of a master `seed` is
/// reproducible regardless of call order or thread count, which is what
/// makes parallel Monte-Carlo runs byte-stable: every trial owns its own
/// stream. Gaussians are produced by Box-Muller on top of mt19937_64 so
/// the sequence does not depend on the standard library's unspecified
/// std::normal_distribution implementation.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on (0, 1]; never returns 0 so log() is safe.
  double uniform_open();
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal N(0, 1).
  double gaussian();
  /// Circularly-symmetric complex Gaussian CN(0, 1): real and imaginary
  /// parts i.i.d. N(0, 1/2).
  std::complex<double> complex_gaussian();

  Eigen::MatrixXcd complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace cogbf
