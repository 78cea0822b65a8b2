// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "cogbf/scenario.hpp"

namespace cogbf {

/// One draw of the three link channel matrices. All entries are
/// i.i.d. CN(0,1) when produced by sample_channels.
struct ChannelSet {
  Eigen::MatrixXcd st_to_sr;  // secondary link, sr_antennas x st_antennas
  Eigen::MatrixXcd st_to_pr;  // interference path, pr_antennas x st_antennas
  Eigen::MatrixXcd pt_to_sr;  // primary interference at SR, sr_antennas x pt_antennas
};

/// Draws a channel set from substream `stream_index` of config.seed.
/// Deterministic given (seed, stream_index): the same pair yields
/// bit-identical matrices no matter the call order or thread count.
/// A failed full-rank check triggers exactly one redraw (from the same
/// stream) before giving up with NumericalFailure; with continuous
/// entries this is astronomically improbable.
ChannelSet sample_channels(const ScenarioConfig& config,
                           std::uint64_t stream_index);

}  // namespace cogbf
