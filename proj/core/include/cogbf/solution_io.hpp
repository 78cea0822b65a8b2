// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "cogbf/channel.hpp"
#include "cogbf/scenario.hpp"
#include "cogbf/solution.hpp"

namespace cogbf {

/// A solution dump together with the scenario that produced it.
struct SolutionRecord {
  ScenarioConfig scenario;
  BeamformingSolution solution;
};

/// Self-describing JSON record: complex matrices as row-major [re, im]
/// pairs, every scalar in linear units, scenario echo and the library
/// version. Doubles are serialized with shortest-round-trip precision,
/// so a dump/load cycle reproduces the transmit matrix bit for bit.
std::string solution_to_json(const BeamformingSolution& solution,
                             const ScenarioConfig& scenario);

void dump_solution(const BeamformingSolution& solution,
                   const ScenarioConfig& scenario, const std::string& path);

/// Parses and validates; throws IoError describing every schema problem
/// found (missing keys, wrong types, inconsistent dimensions).
SolutionRecord parse_solution(const std::string& json_text);

SolutionRecord load_solution(const std::string& path);

/// Schema check only; throws IoError when the record is malformed.
void validate_solution_json(const std::string& json_text);

/// Channel-matrix files: a `st sr pt pr` dimension header followed by
/// the three matrices (secondary link, leakage, primary path) row-major,
/// one `re im` pair per entry, whitespace separated. Written with 17
/// significant digits so values survive a round trip exactly.
ChannelSet load_channels(const std::string& path);
void save_channels(const ChannelSet& channels, const std::string& path);

}  // namespace cogbf
