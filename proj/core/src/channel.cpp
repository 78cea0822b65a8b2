// SPDX-License-Identifier: Apache-2.0
#include "cogbf/channel.hpp"

#include <limits>

#include "cogbf/errors.hpp"
#include "cogbf/random.hpp"

namespace cogbf {

namespace {

bool full_rank(const Eigen::MatrixXcd& matrix) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
  const auto& sigma = svd.singularValues();
  const double tol = std::max(matrix.rows(), matrix.cols()) *
                     std::numeric_limits<double>::epsilon() * sigma(0);
  return sigma(sigma.size() - 1) > tol;
}

ChannelSet draw(RandomStream& rng, const ScenarioConfig& config) {
  // Fixed draw order (secondary link, interference path, primary path)
  // is part of the determinism contract.
  ChannelSet channels;
  channels.st_to_sr =
      rng.complex_gaussian_matrix(config.sr_antennas, config.st_antennas);
  channels.st_to_pr =
      rng.complex_gaussian_matrix(config.pr_antennas, config.st_antennas);
  channels.pt_to_sr =
      rng.complex_gaussian_matrix(config.sr_antennas, config.pt_antennas);
  return channels;
}

bool all_full_rank(const ChannelSet& channels) {
  return full_rank(channels.st_to_sr) && full_rank(channels.st_to_pr) &&
         full_rank(channels.pt_to_sr);
}

}  // namespace

ChannelSet sample_channels(const ScenarioConfig& config,
                           std::uint64_t stream_index) {
  RandomStream rng(config.seed, stream_index);
  ChannelSet channels = draw(rng, config);
  if (all_full_rank(channels)) return channels;
  channels = draw(rng, config);
  if (all_full_rank(channels)) return channels;
  throw NumericalFailure("sample_channels: rank-deficient draw twice in a row");
}

}  // namespace cogbf
