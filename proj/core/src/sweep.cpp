// SPDX-License-Identifier: Apache-2.0
#include "cogbf/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "cogbf/channel.hpp"
#include "cogbf/derived.hpp"
#include "cogbf/errors.hpp"
#include "cogbf/feasibility.hpp"
#include "cogbf/nfb.hpp"
#include "cogbf/zfb.hpp"

namespace cogbf {

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kZfb: return "zfb";
    case SolverKind::kNfb: return "nfb";
    case SolverKind::kLowerBound: return "lower_bound";
  }
  return "?";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<double> matched_sum_rate_targets(
    double identical_target, const std::vector<double>& weights) {
  if (!(identical_target > 0.0))
    throw ConfigError("matched targets: identical target must be positive");
  if (weights.empty())
    throw ConfigError("matched targets: need at least one weight");
  for (double w : weights)
    if (!(w > 0.0)) throw ConfigError("matched targets: weights must be positive");

  const double streams = static_cast<double>(weights.size());
  const double wanted_log_rate = streams * std::log1p(identical_target);
  const auto log_rate = [&](double scale) {
    double total = 0.0;
    for (double w : weights) total += std::log1p(scale * w);
    return total;
  };

  // log_rate is increasing and unbounded in the scale; bracket and bisect.
  double hi = 1.0;
  while (log_rate(hi) < wanted_log_rate) hi *= 2.0;
  double lo = 0.0;
  for (int iteration = 0; iteration < 200; ++iteration) {
    const double mid = 0.5 * (lo + hi);
    if (log_rate(mid) < wanted_log_rate)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  const double scale = 0.5 * (lo + hi);
  std::vector<double> targets(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) targets[i] = scale * weights[i];
  std::sort(targets.begin(), targets.end(), std::greater<double>());
  return targets;
}

namespace {

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) total += data[i];
    return total;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double pairwise_sum(const std::vector<double>& values) {
  return values.empty() ? 0.0 : pairwise_sum(values.data(), values.size());
}

struct TrialCell {
  double power = 0.0;
  double interference = 0.0;
  bool ok = false;
};

void parallel_trials(int trials, int threads,
                     const std::function<void(int)>& body) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

void validate_spec(const SweepSpec& spec) {
  if (spec.trials < 1) throw ConfigError("sweep: trials must be >= 1");
  if (spec.axis_values.empty()) throw ConfigError("sweep: no axis values");
  for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
    if (!(spec.axis_values[i] > spec.axis_values[i - 1]))
      throw ConfigError("sweep: axis values must be strictly increasing");
  if (spec.solvers.empty()) throw ConfigError("sweep: no solvers requested");
  if (!spec.distinct_weights.empty()) {
    if (spec.axis != SweepAxis::kSnr)
      throw ConfigError("sweep: distinct pattern applies to the snr axis only");
    if (static_cast<int>(spec.distinct_weights.size()) != spec.scenario.streams)
      throw ConfigError("sweep: need one distinct weight per stream");
  }
  const bool wants_zfb =
      std::find(spec.solvers.begin(), spec.solvers.end(), SolverKind::kZfb) !=
      spec.solvers.end();
  if (wants_zfb &&
      spec.scenario.st_antennas - spec.scenario.pr_antennas < spec.scenario.streams)
    throw ConfigError(
        "sweep: zfb needs st_antennas - pr_antennas >= streams");
  if (spec.axis == SweepAxis::kXi && spec.axis_unit == AxisUnit::kLinear)
    for (double value : spec.axis_values)
      if (value < 0.0) throw ConfigError("sweep: interference cap must be >= 0");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  validate_spec(spec);
  const int axis_count = static_cast<int>(spec.axis_values.size());
  const int solver_count = static_cast<int>(spec.solvers.size());

  // Targets and caps per axis point, shared by every trial.
  std::vector<SnrMatrix> targets;
  std::vector<double> caps;
  targets.reserve(static_cast<std::size_t>(axis_count));
  for (double raw : spec.axis_values) {
    const double value =
        spec.axis_unit == AxisUnit::kDecibel ? db_to_linear(raw) : raw;
    if (spec.axis == SweepAxis::kSnr) {
      if (!(value > 0.0)) throw ConfigError("sweep: snr axis must be positive");
      if (spec.distinct_weights.empty()) {
        targets.emplace_back(
            std::vector<double>(static_cast<std::size_t>(spec.scenario.streams),
                                value));
      } else {
        targets.emplace_back(
            matched_sum_rate_targets(value, spec.distinct_weights));
      }
      caps.push_back(spec.scenario.interference_cap);
    } else {
      targets.emplace_back(spec.scenario.snr_targets);
      caps.push_back(value);
    }
  }

  std::vector<TrialCell> cells(static_cast<std::size_t>(spec.trials) *
                               static_cast<std::size_t>(axis_count) *
                               static_cast<std::size_t>(solver_count));
  const auto cell_at = [&](int trial, int axis, int solver) -> TrialCell& {
    return cells[(static_cast<std::size_t>(trial) *
                      static_cast<std::size_t>(axis_count) +
                  static_cast<std::size_t>(axis)) *
                     static_cast<std::size_t>(solver_count) +
                 static_cast<std::size_t>(solver)];
  };

  parallel_trials(spec.trials, threads, [&](int trial) {
    DerivedModel model;
    try {
      model = build_derived(
          sample_channels(spec.scenario, static_cast<std::uint64_t>(trial)),
          spec.scenario);
    } catch (const Error&) {
      return;  // all cells for this trial stay infeasible
    }
    for (int axis = 0; axis < axis_count; ++axis) {
      for (int solver = 0; solver < solver_count; ++solver) {
        TrialCell& cell = cell_at(trial, axis, solver);
        try {
          switch (spec.solvers[static_cast<std::size_t>(solver)]) {
            case SolverKind::kZfb: {
              const BeamformingSolution solution =
                  solve_zfb(model, targets[static_cast<std::size_t>(axis)]);
              cell = {solution.power, solution.interference, true};
              break;
            }
            case SolverKind::kNfb: {
              const BeamformingSolution solution =
                  solve_nfb(model, targets[static_cast<std::size_t>(axis)],
                            caps[static_cast<std::size_t>(axis)]);
              cell = {solution.power, solution.interference, true};
              break;
            }
            case SolverKind::kLowerBound: {
              const auto [power, interference] = power_and_interference_at(
                  model, targets[static_cast<std::size_t>(axis)], 0.0);
              cell = {power, interference, true};
              break;
            }
          }
        } catch (const Error&) {
          cell.ok = false;  // counted, never aborts the sweep
        }
      }
    }
  });

  // Per-trial sanity: restricting the beamformer can only cost power.
  for (int trial = 0; trial < spec.trials; ++trial) {
    for (int axis = 0; axis < axis_count; ++axis) {
      double zfb_power = -1.0, nfb_power = -1.0, bound_power = -1.0;
      for (int solver = 0; solver < solver_count; ++solver) {
        const TrialCell& cell = cell_at(trial, axis, solver);
        if (!cell.ok) continue;
        switch (spec.solvers[static_cast<std::size_t>(solver)]) {
          case SolverKind::kZfb: zfb_power = cell.power; break;
          case SolverKind::kNfb: nfb_power = cell.power; break;
          case SolverKind::kLowerBound: bound_power = cell.power; break;
        }
      }
      const auto ordered = [](double restricted, double relaxed) {
        return restricted >= relaxed - 1e-8 * std::max(1.0, relaxed);
      };
      if (zfb_power >= 0.0 && nfb_power >= 0.0 && !ordered(zfb_power, nfb_power))
        throw NumericalFailure("sweep: zfb power fell below nfb power");
      if (nfb_power >= 0.0 && bound_power >= 0.0 &&
          !ordered(nfb_power, bound_power))
        throw NumericalFailure("sweep: nfb power fell below the lower bound");
      if (zfb_power >= 0.0 && bound_power >= 0.0 &&
          !ordered(zfb_power, bound_power))
        throw NumericalFailure("sweep: zfb power fell below the lower bound");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(axis_count) *
               static_cast<std::size_t>(solver_count));
  std::vector<double> powers, interferences, deviations;
  for (int axis = 0; axis < axis_count; ++axis) {
    for (int solver = 0; solver < solver_count; ++solver) {
      powers.clear();
      interferences.clear();
      for (int trial = 0; trial < spec.trials; ++trial) {
        const TrialCell& cell = cell_at(trial, axis, solver);
        if (!cell.ok) continue;
        powers.push_back(cell.power);
        interferences.push_back(cell.interference);
      }
      SweepRow row;
      row.axis_value = spec.axis_values[static_cast<std::size_t>(axis)];
      row.solver = solver_name(spec.solvers[static_cast<std::size_t>(solver)]);
      row.trials = spec.trials;
      row.infeasible = spec.trials - static_cast<int>(powers.size());
      if (!powers.empty()) {
        const double count = static_cast<double>(powers.size());
        row.mean_power = pairwise_sum(powers) / count;
        row.mean_interference = pairwise_sum(interferences) / count;
        if (powers.size() > 1) {
          deviations.clear();
          for (double power : powers) {
            const double diff = power - row.mean_power;
            deviations.push_back(diff * diff);
          }
          row.power_stddev = std::sqrt(pairwise_sum(deviations) / (count - 1.0));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, AxisUnit unit) {
  std::string out =
      "axis,axis_unit,solver,mean_power,stddev,mean_interference,infeasible,"
      "trials\n";
  const char* unit_name = unit == AxisUnit::kDecibel ? "dB" : "linear";
  for (const SweepRow& row : rows) {
    out += format_double(row.axis_value);
    out += ',';
    out += unit_name;
    out += ',';
    out += row.solver;
    out += ',';
    out += format_double(row.mean_power);
    out += ',';
    out += format_double(row.power_stddev);
    out += ',';
    out += format_double(row.mean_interference);
    out += ',';
    out += std::to_string(row.infeasible);
    out += ',';
    out += std::to_string(row.trials);
    out += '\n';
  }
  return out;
}

std::vector<AccessRow> run_access_probability(const ScenarioConfig& scenario,
                                              const std::vector<double>& caps,
                                              AxisUnit unit, int trials,
                                              int threads) {
  if (trials < 1) throw ConfigError("access sweep: trials must be >= 1");
  if (caps.empty()) throw ConfigError("access sweep: no cap values");
  for (std::size_t i = 1; i < caps.size(); ++i)
    if (!(caps[i] > caps[i - 1]))
      throw ConfigError("access sweep: cap values must be strictly increasing");

  std::vector<double> linear_caps(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    linear_caps[i] = unit == AxisUnit::kDecibel ? db_to_linear(caps[i]) : caps[i];
    if (linear_caps[i] < 0.0)
      throw ConfigError("access sweep: caps must be nonnegative");
  }

  const SnrMatrix snr = SnrMatrix::from_config(scenario);
  std::vector<double> xi_min(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> valid(static_cast<std::size_t>(trials), 0);
  parallel_trials(trials, threads, [&](int trial) {
    try {
      const DerivedModel model = build_derived(
          sample_channels(scenario, static_cast<std::uint64_t>(trial)),
          scenario);
      xi_min[static_cast<std::size_t>(trial)] = min_interference(model, snr);
      valid[static_cast<std::size_t>(trial)] = 1;
    } catch (const Error&) {
      valid[static_cast<std::size_t>(trial)] = 0;
    }
  });

  std::vector<AccessRow> rows;
  rows.reserve(caps.size());
  for (std::size_t c = 0; c < caps.size(); ++c) {
    int granted = 0;
    for (int trial = 0; trial < trials; ++trial)
      if (valid[static_cast<std::size_t>(trial)] &&
          xi_min[static_cast<std::size_t>(trial)] <= linear_caps[c])
        ++granted;
    AccessRow row;
    row.axis_value = caps[c];
    row.probability = static_cast<double>(granted) / static_cast<double>(trials);
    row.trials = trials;
    rows.push_back(row);
  }
  return rows;
}

std::string access_csv(const std::vector<AccessRow>& rows, AxisUnit unit) {
  std::string out = "axis,axis_unit,access_probability,trials\n";
  const char* unit_name = unit == AxisUnit::kDecibel ? "dB" : "linear";
  for (const AccessRow& row : rows) {
    out += format_double(row.axis_value);
    out += ',';
    out += unit_name;
    out += ',';
    out += format_double(row.probability);
    out += ',';
    out += std::to_string(row.trials);
    out += '\n';
  }
  return out;
}

}  // namespace cogbf
