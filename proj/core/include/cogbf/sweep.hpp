// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cogbf/scenario.hpp"

namespace cogbf {

enum class SweepAxis { kSnr, kXi };
enum class AxisUnit { kLinear, kDecibel };
enum class SolverKind { kZfb, kNfb, kLowerBound };

const char* solver_name(SolverKind kind);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Per-stream targets with the same sum rate as `streams` identical
/// targets of value `identical_target`: the relative weights fix the
/// shape and a common scale is solved so the rate products match.
std::vector<double> matched_sum_rate_targets(double identical_target,
                                             const std::vector<double>& weights);

/// One Monte-Carlo sweep: an axis (per-stream SNR target or interference
/// cap), the values to visit, and the solvers to run on every trial.
/// Trial t always draws channel substream t of scenario.seed, shared
/// across axis values, so per-trial curves are monotone by construction
/// and repeated runs are byte-identical.
struct SweepSpec {
  ScenarioConfig scenario;  // template; seed, antennas, defaults
  SweepAxis axis = SweepAxis::kSnr;
  std::vector<double> axis_values;  // strictly increasing, in axis_unit
  AxisUnit axis_unit = AxisUnit::kLinear;
  int trials = 1;
  std::vector<SolverKind> solvers;
  // Empty: identical targets (axis value on every stream). Otherwise the
  // relative weights of a distinct-target pattern, matched to the
  // identical case's sum rate at every axis point. SNR axis only.
  std::vector<double> distinct_weights;
  std::string output_path;  // consumed by the CLI layer
};

struct SweepRow {
  double axis_value = 0.0;  // as given, in axis_unit
  std::string solver;
  double mean_power = 0.0;        // over feasible trials
  double power_stddev = 0.0;      // sample stddev over feasible trials
  double mean_interference = 0.0;
  int infeasible = 0;
  int trials = 0;
};

/// Runs the sweep with `threads` workers (0 = hardware concurrency).
/// Per-trial solver failures are counted in `infeasible`, never abort
/// the sweep. Aggregation is pairwise summation in trial order, so the
/// output does not depend on the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows, AxisUnit unit);

struct AccessRow {
  double axis_value = 0.0;  // interference cap, in axis_unit
  double probability = 0.0;
  int trials = 0;
};

/// Access probability over a grid of interference caps, one channel draw
/// per trial shared across the grid.
std::vector<AccessRow> run_access_probability(const ScenarioConfig& scenario,
                                              const std::vector<double>& caps,
                                              AxisUnit unit, int trials,
                                              int threads = 1);

std::string access_csv(const std::vector<AccessRow>& rows, AxisUnit unit);

}  // namespace cogbf
