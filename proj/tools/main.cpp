// SPDX-License-Identifier: Apache-2.0
//
// cogbf — minimum-power secondary beamforming experiments.
//
// Subcommands: access-prob, sweep, solve, selftest. Powers and SNR
// values are linear unless a -db flag or dB unit is chosen; conversion
// happens here and nowhere else. Exit codes: 0 success, 2 configuration
// error, 3 infeasible single solve, 4 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cogbf/certificates.hpp"
#include "cogbf/channel.hpp"
#include "cogbf/derived.hpp"
#include "cogbf/errors.hpp"
#include "cogbf/feasibility.hpp"
#include "cogbf/nfb.hpp"
#include "cogbf/selftest.hpp"
#include "cogbf/solution_io.hpp"
#include "cogbf/sweep.hpp"
#include "cogbf/version.hpp"
#include "cogbf/zfb.hpp"

namespace {

struct ScenarioFlags {
  int st_antennas = 5;
  int sr_antennas = 5;
  int pt_antennas = 2;
  int pr_antennas = 2;
  int streams = 1;
  double primary_power = 1.0;
  std::vector<double> snr_linear;
  std::vector<double> snr_db;
  std::optional<double> xi_linear;
  std::optional<double> xi_db;
  std::optional<std::uint64_t> seed;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("-m,--st-antennas", flags.st_antennas,
                  "Secondary transmit antennas")->capture_default_str();
  cmd->add_option("-n,--sr-antennas", flags.sr_antennas,
                  "Secondary receive antennas")->capture_default_str();
  cmd->add_option("-p,--pt-antennas", flags.pt_antennas,
                  "Primary transmit antennas")->capture_default_str();
  cmd->add_option("-q,--pr-antennas", flags.pr_antennas,
                  "Primary receive antennas")->capture_default_str();
  cmd->add_option("-d,--streams", flags.streams, "Secondary data streams")
      ->capture_default_str();
  cmd->add_option("--primary-power", flags.primary_power,
                  "Primary transmit power (linear)")->capture_default_str();
  auto* snr = cmd->add_option("--snr", flags.snr_linear,
                              "Per-stream SNR targets, linear (single value "
                              "is repeated for all streams)")
                  ->delimiter(',');
  cmd->add_option("--snr-db", flags.snr_db,
                  "Per-stream SNR targets in dB")
      ->delimiter(',')
      ->excludes(snr);
  auto* xi = cmd->add_option("--xi", flags.xi_linear,
                             "Interference cap at the primary receiver (linear)");
  cmd->add_option("--xi-db", flags.xi_db, "Interference cap in dB")
      ->excludes(xi);
  cmd->add_option("--seed", flags.seed,
                  "Master RNG seed (default: $COGBF_SEED, else 0)");
}

std::uint64_t resolve_seed(const ScenarioFlags& flags) {
  if (flags.seed) return *flags.seed;
  if (const char* env = std::getenv("COGBF_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw cogbf::ConfigError(
          "COGBF_SEED is set but not a valid unsigned integer");
    }
  }
  return 0;
}

std::vector<double> resolve_targets(const ScenarioFlags& flags) {
  std::vector<double> targets;
  if (!flags.snr_db.empty()) {
    for (double db : flags.snr_db) targets.push_back(cogbf::db_to_linear(db));
  } else if (!flags.snr_linear.empty()) {
    targets = flags.snr_linear;
  } else {
    targets = {10.0};  // 10 dB default
  }
  if (targets.size() == 1)
    targets.assign(static_cast<std::size_t>(flags.streams), targets.front());
  return targets;
}

double resolve_cap(const ScenarioFlags& flags, double fallback) {
  if (flags.xi_db) return cogbf::db_to_linear(*flags.xi_db);
  if (flags.xi_linear) return *flags.xi_linear;
  return fallback;
}

cogbf::ScenarioConfig build_scenario(const ScenarioFlags& flags,
                                     double cap_fallback = 1.0) {
  return cogbf::ScenarioConfig(
      flags.st_antennas, flags.sr_antennas, flags.pt_antennas,
      flags.pr_antennas, flags.streams, flags.primary_power,
      resolve_cap(flags, cap_fallback), resolve_targets(flags),
      resolve_seed(flags));
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cogbf::IoError("cannot open output file " + path);
  out << text;
  if (!out) throw cogbf::IoError("write failed for " + path);
}

int run_access_prob(const ScenarioFlags& flags,
                    const std::vector<double>& grid_linear,
                    const std::vector<double>& grid_db, int trials,
                    int threads, const std::string& out_path) {
  const bool use_db = !grid_db.empty();
  const std::vector<double>& grid = use_db ? grid_db : grid_linear;
  if (grid.empty())
    throw cogbf::ConfigError("access-prob: provide --xi-grid or --xi-grid-db");
  const cogbf::AxisUnit unit =
      use_db ? cogbf::AxisUnit::kDecibel : cogbf::AxisUnit::kLinear;
  const auto rows = cogbf::run_access_probability(build_scenario(flags), grid,
                                                  unit, trials, threads);
  write_text(cogbf::access_csv(rows, unit), out_path);
  return 0;
}

int run_sweep_cmd(const ScenarioFlags& flags, const std::string& axis_name,
                  const std::vector<double>& values,
                  const std::string& unit_name,
                  const std::vector<std::string>& solver_names,
                  const std::vector<double>& weights, int trials, int threads,
                  const std::string& out_path) {
  cogbf::SweepSpec spec{build_scenario(flags),
                        cogbf::SweepAxis::kSnr,
                        values,
                        cogbf::AxisUnit::kLinear,
                        trials,
                        {},
                        weights,
                        out_path};
  if (axis_name == "snr") {
    spec.axis = cogbf::SweepAxis::kSnr;
  } else if (axis_name == "xi") {
    spec.axis = cogbf::SweepAxis::kXi;
  } else {
    throw cogbf::ConfigError("sweep: --axis must be snr or xi");
  }
  if (unit_name == "db" || unit_name == "dB") {
    spec.axis_unit = cogbf::AxisUnit::kDecibel;
  } else if (unit_name == "linear") {
    spec.axis_unit = cogbf::AxisUnit::kLinear;
  } else {
    throw cogbf::ConfigError("sweep: --unit must be linear or db");
  }
  for (const std::string& name : solver_names) {
    if (name == "zfb") {
      spec.solvers.push_back(cogbf::SolverKind::kZfb);
    } else if (name == "nfb") {
      spec.solvers.push_back(cogbf::SolverKind::kNfb);
    } else if (name == "lower_bound") {
      spec.solvers.push_back(cogbf::SolverKind::kLowerBound);
    } else {
      throw cogbf::ConfigError("sweep: unknown solver '" + name + "'");
    }
  }
  const auto rows = cogbf::run_sweep(spec, threads);
  write_text(cogbf::sweep_csv(rows, spec.axis_unit), spec.output_path);
  return 0;
}

int run_solve(const ScenarioFlags& flags, const std::string& channel_path,
              const std::string& mode, std::uint64_t trial,
              const std::string& dump_path,
              const std::string& dump_channels_path) {
  const cogbf::ScenarioConfig scenario = build_scenario(flags);
  cogbf::ChannelSet channels;
  if (channel_path.empty()) {
    channels = cogbf::sample_channels(scenario, trial);
  } else {
    channels = cogbf::load_channels(channel_path);
  }
  if (!dump_channels_path.empty())
    cogbf::save_channels(channels, dump_channels_path);

  const cogbf::DerivedModel model = cogbf::build_derived(channels, scenario);
  const cogbf::SnrMatrix snr = cogbf::SnrMatrix::from_config(scenario);

  cogbf::BeamformingSolution solution;
  if (mode == "zfb") {
    solution = cogbf::solve_zfb(model, snr);
  } else if (mode == "nfb") {
    solution = cogbf::solve_nfb(model, snr, scenario.interference_cap);
  } else {
    throw cogbf::ConfigError("solve: --mode must be zfb or nfb");
  }

  const cogbf::FeasibilityReport access =
      cogbf::test_access(model, snr, scenario.interference_cap);
  std::printf("mode            %s\n", cogbf::mode_name(solution.mode));
  std::printf("power           %.12g\n", solution.power);
  std::printf("interference    %.12g\n", solution.interference);
  std::printf("xi_min          %.12g\n", access.xi_min);
  if (solution.multiplier_defined)
    std::printf("multiplier      %.12g\n", solution.multiplier);
  for (Eigen::Index i = 0; i < solution.stream_snr.size(); ++i)
    std::printf("stream_snr[%d]   %.12g\n", static_cast<int>(i),
                solution.stream_snr[i]);
  if (solution.stalled)
    std::printf("warning         bisection stalled at an eigenvalue crossing\n");

  if (!dump_path.empty())
    cogbf::dump_solution(solution, scenario, dump_path);
  return 0;
}

int run_selftest_cmd(bool quick) {
  bool all_passed = true;
  for (const cogbf::SelfTestResult& result : cogbf::run_selftest(quick)) {
    std::printf("%s  %-24s %s\n", result.passed ? "ok  " : "FAIL",
                result.name.c_str(), result.detail.c_str());
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-power cognitive-radio beamforming experiments"};
  app.set_version_flag("--version", cogbf::kVersion);
  app.set_config("--config", "", "Read defaults from a key=value config file");
  app.require_subcommand(1);

  ScenarioFlags flags;
  int trials = 2000;
  int threads = 0;
  std::string out_path;

  auto* access = app.add_subcommand(
      "access-prob", "Monte-Carlo secondary access probability vs cap grid");
  add_scenario_flags(access, flags);
  std::vector<double> grid_linear, grid_db;
  auto* grid_opt = access->add_option("--xi-grid", grid_linear,
                                      "Cap grid, linear, increasing")
                       ->delimiter(',');
  access->add_option("--xi-grid-db", grid_db, "Cap grid in dB, increasing")
      ->delimiter(',')
      ->excludes(grid_opt);
  access->add_option("--trials", trials, "Channel draws per grid")
      ->capture_default_str();
  access->add_option("--threads", threads, "Worker threads (0 = all cores)");
  access->add_option("-o,--out", out_path, "Output CSV path ('-' = stdout)");

  auto* sweep = app.add_subcommand(
      "sweep", "Monte-Carlo mean-power sweep over an SNR or cap axis");
  ScenarioFlags sweep_flags;
  add_scenario_flags(sweep, sweep_flags);
  std::string axis_name = "snr", unit_name = "linear";
  std::vector<double> axis_values;
  std::vector<std::string> solver_names{"nfb"};
  std::vector<double> weights;
  int sweep_trials = 2000, sweep_threads = 0;
  std::string sweep_out;
  sweep->add_option("--axis", axis_name, "Sweep axis: snr or xi")
      ->capture_default_str();
  sweep->add_option("--values", axis_values, "Axis values, increasing")
      ->delimiter(',')
      ->required();
  sweep->add_option("--unit", unit_name, "Axis unit: linear or db")
      ->capture_default_str();
  sweep->add_option("--solvers", solver_names,
                    "Subset of zfb,nfb,lower_bound")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--weights", weights,
                    "Distinct-SNR pattern weights (snr axis; sum rate matched "
                    "to the identical case)")
      ->delimiter(',');
  sweep->add_option("--trials", sweep_trials, "Channel draws per axis value")
      ->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");
  sweep->add_option("-o,--out", sweep_out, "Output CSV path ('-' = stdout)");

  auto* solve = app.add_subcommand(
      "solve", "Solve one instance (sampled channels or a channel file)");
  ScenarioFlags solve_flags;
  add_scenario_flags(solve, solve_flags);
  std::string channel_path, mode = "nfb", dump_path, dump_channels_path;
  std::uint64_t trial = 0;
  solve->add_option("--channels", channel_path,
                    "Channel file: 'st sr pt pr' header then row-major re/im "
                    "pairs");
  solve->add_option("--trial", trial, "Channel substream when sampling")
      ->capture_default_str();
  solve->add_option("--mode", mode, "zfb or nfb")->capture_default_str();
  solve->add_option("--dump", dump_path, "Write the solution record (JSON)");
  solve->add_option("--dump-channels", dump_channels_path,
                    "Write the channels used (channel file format)");

  auto* selftest = app.add_subcommand("selftest", "Run the property suites");
  bool quick = false;
  selftest->add_flag("--quick", quick, "Smaller instance counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) return app.exit(error);
    app.exit(error);
    return 2;
  }

  try {
    if (access->parsed())
      return run_access_prob(flags, grid_linear, grid_db, trials, threads,
                             out_path);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_flags, axis_name, axis_values, unit_name,
                           solver_names, weights, sweep_trials, sweep_threads,
                           sweep_out);
    if (solve->parsed())
      return run_solve(solve_flags, channel_path, mode, trial, dump_path,
                       dump_channels_path);
    if (selftest->parsed()) return run_selftest_cmd(quick);
  } catch (const cogbf::InfeasibleError& error) {
    std::fprintf(stderr, "infeasible: %s\n", error.what());
    return 3;
  } catch (const cogbf::ConfigError& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return 2;
  } catch (const cogbf::IoError& error) {
    std::fprintf(stderr, "io error: %s\n", error.what());
    return 2;
  } catch (const cogbf::Error& error) {
    std::fprintf(stderr, "numerical failure: %s\n", error.what());
    return 4;
  }
  return 0;
}
