// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace cogbf {

/// Immutable description of one cognitive-radio link setup. All powers
/// and SNR targets are in linear scale; dB conversion happens at the CLI
/// boundary only. The constructor validates, sorts the SNR targets into
/// non-increasing order and records the permutation applied, so
/// snr_targets[i] == original[snr_order[i]].
struct ScenarioConfig {
  ScenarioConfig(int st_antennas, int sr_antennas, int pt_antennas,
                 int pr_antennas, int streams, double primary_power,
                 double interference_cap, std::vector<double> snr_targets,
                 std::uint64_t seed);

  int st_antennas;   // transmit antennas at the secondary transmitter
  int sr_antennas;   // receive antennas at the secondary receiver
  int pt_antennas;   // antennas at the primary transmitter
  int pr_antennas;   // antennas at the primary receiver
  int streams;       // secondary data streams, <= min(st, sr)
  double primary_power;
  double interference_cap;
  std::vector<double> snr_targets;  // non-increasing, all > 0
  std::vector<int> snr_order;       // sort permutation into user order
  std::uint64_t seed;
};

/// Diagonal per-stream SNR requirement matrix: strictly positive entries
/// in non-increasing order (sorted on construction).
class SnrMatrix {
 public:
  explicit SnrMatrix(std::vector<double> targets);
  static SnrMatrix from_config(const ScenarioConfig& config);

  int streams() const { return static_cast<int>(diag_.size()); }
  const std::vector<double>& diag() const { return diag_; }
  double operator[](int i) const { return diag_[static_cast<std::size_t>(i)]; }

  Eigen::VectorXd vector() const;
  Eigen::VectorXd sqrt_vector() const;
  double sum() const;

 private:
  std::vector<double> diag_;
};

}  // namespace cogbf
