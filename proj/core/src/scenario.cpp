// SPDX-License-Identifier: Apache-2.0
#include "cogbf/scenario.hpp"

#include <algorithm>
#include <numeric>

#include "cogbf/errors.hpp"

namespace cogbf {

ScenarioConfig::ScenarioConfig(int st_antennas_in, int sr_antennas_in,
                               int pt_antennas_in, int pr_antennas_in,
                               int streams_in, double primary_power_in,
                               double interference_cap_in,
                               std::vector<double> snr_targets_in,
                               std::uint64_t seed_in)
    : st_antennas(st_antennas_in),
      sr_antennas(sr_antennas_in),
      pt_antennas(pt_antennas_in),
      pr_antennas(pr_antennas_in),
      streams(streams_in),
      primary_power(primary_power_in),
      interference_cap(interference_cap_in),
      snr_targets(std::move(snr_targets_in)),
      seed(seed_in) {
  if (st_antennas < 1 || sr_antennas < 1 || pt_antennas < 1 || pr_antennas < 1)
    throw ConfigError("scenario: every antenna count must be >= 1");
  if (streams < 1) throw ConfigError("scenario: stream count must be >= 1");
  if (streams > std::min(st_antennas, sr_antennas))
    throw ConfigError("scenario: streams must not exceed min(st, sr) antennas");
  if (primary_power < 0.0)
    throw ConfigError("scenario: primary power must be nonnegative");
  if (interference_cap < 0.0)
    throw ConfigError("scenario: interference cap must be nonnegative");
  if (static_cast<int>(snr_targets.size()) != streams)
    throw ConfigError("scenario: need one SNR target per stream");
  for (double target : snr_targets)
    if (!(target > 0.0))
      throw ConfigError("scenario: SNR targets must be strictly positive");

  snr_order.resize(snr_targets.size());
  std::iota(snr_order.begin(), snr_order.end(), 0);
  // Stable sort keeps equal targets in user order, so the recorded
  // permutation is reproducible.
  std::stable_sort(snr_order.begin(), snr_order.end(), [&](int a, int b) {
    return snr_targets[static_cast<std::size_t>(a)] >
           snr_targets[static_cast<std::size_t>(b)];
  });
  std::vector<double> sorted(snr_targets.size());
  for (std::size_t i = 0; i < snr_order.size(); ++i)
    sorted[i] = snr_targets[static_cast<std::size_t>(snr_order[i])];
  snr_targets = std::move(sorted);
}

SnrMatrix::SnrMatrix(std::vector<double> targets) : diag_(std::move(targets)) {
  if (diag_.empty()) throw ConfigError("snr matrix: needs at least one stream");
  for (double target : diag_)
    if (!(target > 0.0))
      throw ConfigError("snr matrix: entries must be strictly positive");
  std::sort(diag_.begin(), diag_.end(), std::greater<double>());
}

SnrMatrix SnrMatrix::from_config(const ScenarioConfig& config) {
  return SnrMatrix(config.snr_targets);
}

Eigen::VectorXd SnrMatrix::vector() const {
  return Eigen::Map<const Eigen::VectorXd>(diag_.data(),
                                           static_cast<Eigen::Index>(diag_.size()));
}

Eigen::VectorXd SnrMatrix::sqrt_vector() const {
  return vector().cwiseSqrt();
}

double SnrMatrix::sum() const {
  double total = 0.0;
  for (double target : diag_) total += target;
  return total;
}

}  // namespace cogbf
